use std::fmt;

use super::explanation::{validate_explanation_in, Explanandum};
use super::kernel::{Combined, CorrectionSet, Limits, RevisionContext};
use super::selection::{select, SelectionStrategy};
use crate::error::{Error, Result};
use crate::logic::{ground, BeliefBase, ClauseDb, Literal, Signature, Statement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    Guided,
    Falappa,
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Operator::Guided => "guided",
            Operator::Falappa => "falappa",
        })
    }
}

/// Outcome of one revision: the union, what was retracted from it, and what
/// is left.
#[derive(Clone, Debug)]
pub struct RevisionResult {
    pub operator: Operator,
    pub revised: BeliefBase,
    /// Retracted statements, labeled as in the union, canonical order.
    pub retracted: Vec<Statement>,
    pub union: Combined,
    /// Signature the union was grounded over.
    pub signature: Signature,
    /// Selection strategy or incision policy name.
    pub strategy: String,
    pub seed: Option<u64>,
}

impl RevisionResult {
    pub(crate) fn from_removal(
        operator: Operator,
        union: &Combined,
        signature: &Signature,
        removed: &[usize],
        strategy: String,
        seed: Option<u64>,
    ) -> Result<Self> {
        let (retracted, kept): (Vec<_>, Vec<_>) = union
            .statements()
            .iter()
            .enumerate()
            .partition(|(i, _)| removed.contains(i));
        let strip =
            |v: Vec<(usize, &Statement)>| v.into_iter().map(|(_, s)| s.clone()).collect::<Vec<_>>();
        Ok(RevisionResult {
            operator,
            revised: BeliefBase::new(strip(kept))?,
            retracted: strip(retracted),
            union: union.clone(),
            signature: signature.clone(),
            strategy,
            seed,
        })
    }

    fn db(&self) -> ClauseDb {
        // The revised base only uses symbols of the union, so its own
        // grounding over the union's signature cannot fail.
        let g = ground(&self.revised, &self.signature).expect("grounding a subset of the union");
        ClauseDb::new([&g.formulas])
    }

    pub fn entails(&self, phi: &[Literal]) -> bool {
        self.db().entails(|_| true, phi)
    }

    pub fn is_consistent(&self) -> bool {
        self.db().consistent(|_| true)
    }

    pub fn retracted_labels(&self) -> Vec<&str> {
        self.retracted.iter().map(|s| s.label.as_str()).collect()
    }

    /// Whether the union was consistent and nothing had to go.
    pub fn is_vacuous(&self) -> bool {
        self.retracted.is_empty()
    }
}

/// Applies a chosen correction set (or none, for a consistent union).
pub fn apply_selection(
    ctx: &RevisionContext,
    chosen: Option<&CorrectionSet>,
    strategy: &SelectionStrategy,
) -> Result<RevisionResult> {
    let removed = chosen.map(|c| c.indices.as_slice()).unwrap_or(&[]);
    RevisionResult::from_removal(
        Operator::Guided,
        ctx.combined(),
        ctx.signature(),
        removed,
        strategy.name().to_string(),
        strategy.seed(),
    )
}

/// Picks from the admissible stream, stopping early where the strategy
/// allows it.
fn choose(ctx: &RevisionContext, strategy: &SelectionStrategy) -> Result<CorrectionSet> {
    let mut stream = ctx.admissible();
    match strategy {
        SelectionStrategy::MinCardinality => stream.next().ok_or(Error::NoCandidates),
        SelectionStrategy::ProtectExplanation => {
            let mut first = None;
            for c in stream {
                if !c.touches_explanation {
                    return Ok(c);
                }
                first.get_or_insert(c);
            }
            first.ok_or(Error::NoCandidates)
        }
        _ => {
            let all: Vec<CorrectionSet> = stream.collect();
            select(&all, strategy).cloned()
        }
    }
}

/// Revision of `ctx`'s union by the guided operator. The context must carry
/// the explanandum.
pub fn revise_in(ctx: &RevisionContext, strategy: &SelectionStrategy) -> Result<RevisionResult> {
    if ctx.union_consistent() {
        return apply_selection(ctx, None, strategy);
    }
    let chosen = choose(ctx, strategy)?;
    apply_selection(ctx, Some(&chosen), strategy)
}

/// B ⊙ E: add the explanation, then retract a correction set whose removal
/// keeps `phi` entailed.
pub fn revise(
    prior: &BeliefBase,
    explanation: &BeliefBase,
    phi: &Explanandum,
    strategy: &SelectionStrategy,
    limits: Limits,
) -> Result<RevisionResult> {
    let ctx = RevisionContext::new(prior, explanation, Some(phi), limits)?;
    let report = validate_explanation_in(explanation, phi, ctx.signature())?;
    if !report.is_valid() {
        return Err(Error::InvalidExplanation(Box::new(report)));
    }
    revise_in(&ctx, strategy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_base;

    fn insomnia() -> (BeliefBase, BeliefBase, Explanandum) {
        (
            parse_base("Wor(charlie). Wor(charlie) -> Ins(charlie).").unwrap(),
            parse_base("!Ins(charlie).").unwrap(),
            Explanandum::parse("!Ins(charlie)").unwrap(),
        )
    }

    fn formulas(b: &BeliefBase) -> Vec<String> {
        b.formulas().map(|f| f.canonical()).collect()
    }

    #[test]
    fn insomnia_results() {
        let (b, e, phi) = insomnia();
        let r = revise(
            &b,
            &e,
            &phi,
            &SelectionStrategy::Interactive(1),
            Limits::default(),
        )
        .unwrap();
        assert_eq!(formulas(&r.revised), ["!Ins(charlie)", "Wor(charlie)"]);
        assert!(r.entails(phi.literals()));
        let r = revise(
            &b,
            &e,
            &phi,
            &SelectionStrategy::MaxCardinality,
            Limits::default(),
        )
        .unwrap();
        assert_eq!(formulas(&r.revised), ["!Ins(charlie)"]);
        assert!(r.entails(phi.literals()));
    }

    #[test]
    fn min_cardinality_retracts_the_fact() {
        let (b, e, phi) = insomnia();
        let r = revise(
            &b,
            &e,
            &phi,
            &SelectionStrategy::MinCardinality,
            Limits::default(),
        )
        .unwrap();
        assert_eq!(r.retracted_labels(), ["f1"]);
        assert!(r.is_consistent());
    }

    #[test]
    fn consistent_union_is_vacuous() {
        let b = parse_base("Wor(charlie).").unwrap();
        let e = parse_base("Ins(charlie).").unwrap();
        let phi = Explanandum::parse("Ins(charlie)").unwrap();
        let r = revise(
            &b,
            &e,
            &phi,
            &SelectionStrategy::MinCardinality,
            Limits::default(),
        )
        .unwrap();
        assert!(r.is_vacuous());
        assert_eq!(r.revised.len(), 2);
    }

    #[test]
    fn invalid_explanation_rejected() {
        let (b, _, phi) = insomnia();
        let e = parse_base("!Ins(charlie). Wor(diana).").unwrap();
        let err = revise(
            &b,
            &e,
            &phi,
            &SelectionStrategy::MinCardinality,
            Limits::default(),
        )
        .unwrap_err();
        match err {
            Error::InvalidExplanation(r) => assert!(!r.minimal),
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn protect_explanation_keeps_e() {
        let b = parse_base("Wor(charlie). Wor(X) -> Ins(X).").unwrap();
        let e = parse_base("Cop(charlie). Wor(charlie). Wor(X) & Cop(X) -> !Ins(X).").unwrap();
        let phi = Explanandum::parse("!Ins(charlie)").unwrap();
        let r = revise(
            &b,
            &e,
            &phi,
            &SelectionStrategy::ProtectExplanation,
            Limits::default(),
        )
        .unwrap();
        assert_eq!(
            formulas(&r.revised),
            ["Cop(charlie)", "Wor(charlie)", "Wor(X) & Cop(X) -> !Ins(X)"]
        );
    }
}
