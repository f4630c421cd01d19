//! Explanation validation, correction kernels, selection and the guided
//! revision operator.

mod explanation;
mod kernel;
mod operator;
mod selection;

pub use explanation::{
    is_minimal_exhaustive, validate_explanation, validate_explanation_in, Explanandum,
    ExplanationReport,
};
pub use kernel::{
    admissible_selections, correction_kernel, Combined, CorrectionSet, JsonCorrectionElement,
    KernelStream, Limits, RevisionContext, DEFAULT_MAX_GROUND,
};
pub use operator::{apply_selection, revise, revise_in, Operator, RevisionResult};
pub use selection::{select, SelectionStrategy};
