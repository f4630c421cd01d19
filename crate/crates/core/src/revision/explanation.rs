use std::fmt;

use serde::Serialize;

use crate::dsl::{parse_conjunction, render_conjunction};
use crate::error::{Error, Result};
use crate::logic::{
    collect_signature, ground_formula, BeliefBase, ClauseDb, Formula, Literal, Signature,
    SignaturePart,
};

/// A nonempty conjunction of ground literals, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Explanandum {
    literals: Vec<Literal>,
}

impl Explanandum {
    pub fn new(mut literals: Vec<Literal>) -> Result<Self> {
        if literals.is_empty() {
            return Err(Error::InvalidExplanandum("empty conjunction".into()));
        }
        if let Some(l) = literals.iter().find(|l| !l.is_ground()) {
            return Err(Error::NotGround(l.to_string()));
        }
        literals.sort();
        if literals.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidExplanandum("repeated literal".into()));
        }
        if literals.iter().any(|l| literals.contains(&l.negate())) {
            return Err(Error::InvalidExplanandum(
                "contains a literal and its negation".into(),
            ));
        }
        Ok(Explanandum { literals })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Explanandum::new(parse_conjunction(text)?)
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }
}

impl fmt::Display for Explanandum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_conjunction(&self.literals))
    }
}

/// Outcome of checking the three explanation conditions: entailment,
/// consistency and subset-minimality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExplanationReport {
    pub entails_explanandum: bool,
    pub consistent: bool,
    pub minimal: bool,
    /// Labels of proper subsets that still entail the explanandum.
    pub failing_subsets: Vec<Vec<String>>,
}

impl ExplanationReport {
    pub fn is_valid(&self) -> bool {
        self.entails_explanandum && self.consistent && self.minimal
    }
}

impl fmt::Display for ExplanationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "entails: {}, consistent: {}, minimal: {}",
            self.entails_explanandum, self.consistent, self.minimal
        )?;
        for w in &self.failing_subsets {
            write!(f, "; {{{}}} already entails it", w.join(", "))?;
        }
        Ok(())
    }
}

fn clause_db(explanation: &BeliefBase, sig: &Signature) -> Result<ClauseDb> {
    let groups = explanation
        .formulas()
        .map(|f| ground_formula(f, sig))
        .collect::<Result<Vec<Vec<Formula>>>>()?;
    Ok(ClauseDb::new(groups.iter()))
}

/// Checks the explanation conditions over the signature of `explanation`
/// and `phi`.
pub fn validate_explanation(
    explanation: &BeliefBase,
    phi: &Explanandum,
) -> Result<ExplanationReport> {
    let sig = collect_signature(&[
        SignaturePart::Base(explanation),
        SignaturePart::Literals(phi.literals()),
    ])?;
    validate_explanation_in(explanation, phi, &sig)
}

/// As [`validate_explanation`], grounding over `sig` extended with the
/// explanation's own symbols.
pub fn validate_explanation_in(
    explanation: &BeliefBase,
    phi: &Explanandum,
    sig: &Signature,
) -> Result<ExplanationReport> {
    let mut sig = sig.clone();
    sig.add_base(explanation)?;
    phi.literals().iter().try_for_each(|l| sig.add_literal(l))?;
    let db = clause_db(explanation, &sig)?;
    let n = db.len();
    let entails = db.entails(|_| true, phi.literals());
    let consistent = db.consistent(|_| true);
    // Entailment is monotone, so a proper subset entails phi only if some
    // single-element removal does.
    let mut failing = Vec::new();
    for drop in 0..n {
        if db.entails(|i| i != drop, phi.literals()) {
            failing.push(
                explanation
                    .statements()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != drop)
                    .map(|(_, s)| s.label.clone())
                    .collect(),
            );
        }
    }
    Ok(ExplanationReport {
        entails_explanandum: entails,
        consistent,
        minimal: failing.is_empty(),
        failing_subsets: failing,
    })
}

/// Minimality over every proper subset, by enumeration. Exponential; kept
/// as the reference for the single-removal check.
pub fn is_minimal_exhaustive(explanation: &BeliefBase, phi: &Explanandum) -> Result<bool> {
    let sig = collect_signature(&[
        SignaturePart::Base(explanation),
        SignaturePart::Literals(phi.literals()),
    ])?;
    let db = clause_db(explanation, &sig)?;
    let n = db.len();
    if n >= 63 {
        return Err(Error::CapExceeded {
            what: "explanation element",
            count: n,
            cap: 62,
        });
    }
    let full = (1u64 << n) - 1;
    Ok((0..full).all(|mask| !db.entails(|i| mask >> i & 1 == 1, phi.literals())))
}
