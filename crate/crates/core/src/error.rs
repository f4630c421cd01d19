use thiserror::Error;

use crate::dsl::ParseError;
use crate::revision::ExplanationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("predicate `{predicate}` used with arity {first} and {second}")]
    ArityMismatch {
        predicate: String,
        first: usize,
        second: usize,
    },

    #[error("rule `{rule}` has variables but the Herbrand universe is empty")]
    EmptyUniverse { rule: String },

    #[error("head variable `{variable}` of rule `{rule}` does not occur in its body")]
    RangeRestriction { rule: String, variable: String },

    #[error("rule `{0}` has an empty body")]
    EmptyRuleBody(String),

    #[error("`{0}` contains variables where a ground formula is required")]
    NotGround(String),

    #[error("duplicate element `{0}` in belief base")]
    DuplicateElement(String),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),

    #[error("base is inconsistent; consequences are undefined")]
    InconsistentBase,

    #[error("{what} count {count} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        count: usize,
        cap: usize,
    },

    #[error("explanandum invalid: {0}")]
    InvalidExplanandum(String),

    #[error("explanation is not valid for the explanandum ({0})")]
    InvalidExplanation(Box<ExplanationReport>),

    #[error("no candidate correction sets to select from")]
    NoCandidates,

    #[error("selection index {index} out of range for {len} candidates")]
    SelectionOutOfRange { index: usize, len: usize },

    #[error("strategy `{0}` is not deterministic")]
    NonDeterministicStrategy(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("scenario invalid: {0}")]
    ScenarioInvalid(String),

    #[error("instance generation failed after {attempts} attempts")]
    GenerationFailed { attempts: usize },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
