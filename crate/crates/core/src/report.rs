//! Serializable summary of one revision, shared by the CLI text and JSON
//! output.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

use crate::dsl::{render_base, JsonBase};
use crate::error::Result;
use crate::logic::{ground, is_consistent, BeliefBase};
use crate::metrics::{change_measure, ChangeMeasure};
use crate::postulates::check_postulates;
use crate::revision::{Explanandum, JsonCorrectionElement, RevisionResult};

#[derive(Clone, Debug, Serialize)]
pub struct RevisionReport {
    pub operator: String,
    pub strategy: String,
    pub seed: Option<u64>,
    pub explanandum: String,
    pub revised: JsonBase,
    pub retracted: Vec<JsonCorrectionElement>,
    pub entails_explanandum: bool,
    /// Single-revision postulates, by name.
    pub postulates: BTreeMap<String, bool>,
    /// Change from the prior base; absent when the prior is inconsistent.
    pub change_measure: Option<ChangeMeasure>,
    #[serde(skip)]
    revised_text: String,
}

pub fn revision_report(
    prior: &BeliefBase,
    explanation: &BeliefBase,
    phi: &Explanandum,
    result: &RevisionResult,
) -> Result<RevisionReport> {
    let pr = check_postulates(prior, explanation, phi, result)?;
    let prior_consistent = is_consistent(&ground(prior, &result.signature)?.formulas);
    let change_measure = if prior_consistent {
        Some(change_measure(prior, &result.revised, &result.signature)?)
    } else {
        None
    };
    Ok(RevisionReport {
        operator: result.operator.to_string(),
        strategy: result.strategy.clone(),
        seed: result.seed,
        explanandum: phi.to_string(),
        revised: JsonBase::from(&result.revised),
        retracted: result
            .retracted
            .iter()
            .map(|s| JsonCorrectionElement {
                label: s.label.clone(),
                formula: s.formula.canonical(),
            })
            .collect(),
        entails_explanandum: result.entails(phi.literals()),
        postulates: pr
            .checks
            .iter()
            .map(|(p, c)| (p.name().to_string(), c.holds))
            .collect(),
        change_measure,
        revised_text: render_base(&result.revised),
    })
}

impl RevisionReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let retracted: Vec<&str> = self.retracted.iter().map(|e| e.formula.as_str()).collect();
        let _ = writeln!(out, "operator: {}", self.operator);
        match self.seed {
            Some(s) => {
                let _ = writeln!(out, "strategy: {} (seed {s})", self.strategy);
            }
            None => {
                let _ = writeln!(out, "strategy: {}", self.strategy);
            }
        }
        let _ = writeln!(out, "retracted: {{{}}}", retracted.join(", "));
        let _ = writeln!(out, "revised:");
        for line in self.revised_text.lines() {
            let _ = writeln!(out, "  {line}");
        }
        let _ = writeln!(
            out,
            "entails {}: {}",
            self.explanandum, self.entails_explanandum
        );
        for (name, holds) in &self.postulates {
            let _ = writeln!(out, "{name}: {holds}");
        }
        if let Some(m) = &self.change_measure {
            let _ = writeln!(out, "change: {m}");
        }
        out
    }
}
