//! Belief-change measure and the minimal/non-minimal revision coding.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::dsl::{Scenario, StatementKind};
use crate::error::{Error, Result};
use crate::logic::{consequences, BeliefBase, Signature};
use crate::revision::RevisionResult;

/// |Γ(B) △ Γ(B′)| over |Γ(B) ∪ Γ(B′)|. The counts are kept unreduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChangeMeasure {
    pub numerator: u64,
    pub denominator: u64,
}

impl ChangeMeasure {
    /// Exact value; 0 when both consequence sets are empty.
    pub fn value(&self) -> Ratio<u64> {
        if self.denominator == 0 {
            Ratio::from_integer(0)
        } else {
            Ratio::new(self.numerator, self.denominator)
        }
    }

    /// Value rounded half-up to three decimals, e.g. `0.667`.
    pub fn decimal(&self) -> String {
        let v = self.value();
        let thousandths = (v.numer() * 1000 * 2 + v.denom()) / (v.denom() * 2);
        format!("{}.{:03}", thousandths / 1000, thousandths % 1000)
    }
}

impl fmt::Display for ChangeMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{} = {}",
            self.numerator,
            self.denominator,
            self.decimal()
        )
    }
}

impl Serialize for ChangeMeasure {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            numerator: u64,
            denominator: u64,
            value: f64,
        }
        Repr {
            numerator: self.numerator,
            denominator: self.denominator,
            value: self.decimal().parse().expect("decimal rendering parses"),
        }
        .serialize(s)
    }
}

/// 𝒟(B, B′), both consequence sets taken over `sig` extended by the symbols
/// of both bases.
pub fn change_measure(
    b: &BeliefBase,
    b_prime: &BeliefBase,
    sig: &Signature,
) -> Result<ChangeMeasure> {
    let mut sig = sig.clone();
    sig.add_base(b)?;
    sig.add_base(b_prime)?;
    let g = consequences(b, &sig)?;
    let g_prime = consequences(b_prime, &sig)?;
    Ok(ChangeMeasure {
        numerator: g.symmetric_difference(&g_prime).count() as u64,
        denominator: g.union(&g_prime).count() as u64,
    })
}

/// Number of statements of `prior` absent from the revised base, whether
/// discarded outright or replaced by an altered version.
pub fn statement_changes(prior: &BeliefBase, result: &RevisionResult) -> usize {
    prior
        .formulas()
        .filter(|f| !result.revised.contains_formula(f))
        .count()
}

/// Suffix marking an explanation statement as the altered form of a
/// scenario statement: `S1_alt` alters `S1`.
pub const ALTERED_SUFFIX: &str = "_alt";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RevisionClass {
    Minimal,
    NonMinimal,
    Unclassified,
}

impl fmt::Display for RevisionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RevisionClass::Minimal => "minimal",
            RevisionClass::NonMinimal => "non-minimal",
            RevisionClass::Unclassified => "unclassified",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RevisionClassification {
    pub label: RevisionClass,
    pub retained: Vec<String>,
    pub discarded: Vec<String>,
    pub altered: Vec<String>,
}

/// Default number of touched statements from which a revision counts as
/// non-minimal even if only categorical statements are involved.
pub const DEFAULT_NON_MINIMAL_THRESHOLD: usize = 2;

/// Codes a revision of a scenario's statements: minimal when only the
/// categorical statement is discarded or altered, non-minimal when a
/// conditional is, or when at least `threshold` statements are.
pub fn classify_revision(
    sc: &Scenario,
    result: &RevisionResult,
    threshold: usize,
) -> Result<RevisionClassification> {
    let union = &result.union;
    for s in &result.retracted {
        let i = union
            .statements()
            .iter()
            .position(|u| u == s)
            .ok_or_else(|| Error::UnknownLabel(s.label.clone()))?;
        if union.in_base(i) && sc.kind_of(&s.label).is_none() {
            return Err(Error::UnknownLabel(s.label.clone()));
        }
    }
    let revised_labels: BTreeSet<&str> = result
        .revised
        .statements()
        .iter()
        .map(|s| s.label.as_str())
        .collect();
    let (mut retained, mut discarded, mut altered) = (Vec::new(), Vec::new(), Vec::new());
    let mut touched_conditional = false;
    for st in sc.statements() {
        if result.revised.contains_formula(&st.formula) {
            retained.push(st.label.clone());
            continue;
        }
        touched_conditional |= st.kind == StatementKind::Conditional;
        if revised_labels.contains(format!("{}{ALTERED_SUFFIX}", st.label).as_str()) {
            altered.push(st.label.clone());
        } else {
            discarded.push(st.label.clone());
        }
    }
    let touched = discarded.len() + altered.len();
    let label = if touched == 0 {
        RevisionClass::Unclassified
    } else if touched_conditional || touched >= threshold {
        RevisionClass::NonMinimal
    } else {
        RevisionClass::Minimal
    };
    Ok(RevisionClassification {
        label,
        retained,
        discarded,
        altered,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_base, parse_scenario};
    use crate::logic::{collect_signature, SignaturePart};
    use crate::revision::{revise, Explanandum, Limits, SelectionStrategy};

    const TWO_WORRIED: &str =
        "Wor(charlie). Wor(diana). Wor(charlie) -> Ins(charlie). Wor(diana) -> Ins(diana).";

    fn sig(bases: &[&BeliefBase]) -> Signature {
        let parts: Vec<SignaturePart> = bases.iter().map(|b| SignaturePart::Base(b)).collect();
        collect_signature(&parts).unwrap()
    }

    #[test]
    fn two_worried_change() {
        let b = parse_base(TWO_WORRIED).unwrap();
        let b1 = parse_base(
            "Wor(charlie). Wor(diana). Cop(charlie). Wor(diana) -> Ins(diana). Wor(charlie) & Cop(charlie) -> !Ins(charlie).",
        )
        .unwrap();
        let b2 = parse_base(
            "Wor(charlie). Wor(diana). Cop(charlie). Wor(charlie) & Cop(charlie) -> !Ins(charlie).",
        )
        .unwrap();
        let s = sig(&[&b, &b1, &b2]);
        let d1 = change_measure(&b, &b1, &s).unwrap();
        let d2 = change_measure(&b, &b2, &s).unwrap();
        assert_eq!(d1.value(), Ratio::new(1, 2));
        assert_eq!(d2.value(), Ratio::new(2, 3));
        assert_eq!(d1.decimal(), "0.500");
        assert_eq!(d2.decimal(), "0.667");
    }

    #[test]
    fn identity_and_disjoint() {
        let b = parse_base(TWO_WORRIED).unwrap();
        let s = sig(&[&b]);
        assert_eq!(change_measure(&b, &b, &s).unwrap().numerator, 0);
        let p = parse_base("P(a).").unwrap();
        let q = parse_base("Q(b).").unwrap();
        let d = change_measure(&p, &q, &sig(&[&p, &q])).unwrap();
        assert_eq!(d.value(), Ratio::from_integer(1));
        let e = BeliefBase::empty();
        assert_eq!(
            change_measure(&e, &e, &Signature::new()).unwrap().value(),
            Ratio::from_integer(0)
        );
    }

    #[test]
    fn inconsistent_base_rejected() {
        let b = parse_base("P(a). !P(a).").unwrap();
        assert!(matches!(
            change_measure(&b, &b, &sig(&[&b])),
            Err(Error::InconsistentBase)
        ));
    }

    fn scenario() -> Scenario {
        parse_scenario(
            "[meta]\nid: t\ntype: II\n[statements]\nS1: conditional: Worried(X) -> DifficultConcentrate(X).\n\
             S2: conditional: Worried(X) -> Insomnia(X).\nS3: categorical: Worried(alice).\n\
             [fact]\n!DifficultConcentrate(alice).\n",
        )
        .unwrap()
    }

    #[test]
    fn classification() {
        let sc = scenario();
        let phi = Explanandum::new(sc.fact.clone()).unwrap();
        let e = BeliefBase::from_formulas(sc.fact.iter().cloned().map(Into::into)).unwrap();
        let b = sc.base();
        // candidates: {S1}, {S3}, ...
        let pick = |i| {
            revise(
                &b,
                &e,
                &phi,
                &SelectionStrategy::Interactive(i),
                Limits::default(),
            )
            .unwrap()
        };
        let r = pick(0);
        let c = classify_revision(&sc, &r, DEFAULT_NON_MINIMAL_THRESHOLD).unwrap();
        assert_eq!(c.discarded, ["S3"]);
        assert_eq!(c.label, RevisionClass::Minimal);
        assert_eq!(statement_changes(&b, &r), 1);
        let r = pick(1);
        let c = classify_revision(&sc, &r, DEFAULT_NON_MINIMAL_THRESHOLD).unwrap();
        assert_eq!(c.discarded, ["S1"]);
        assert_eq!(c.label, RevisionClass::NonMinimal);
    }

    #[test]
    fn altered_and_unclassified() {
        let sc = scenario();
        let phi = Explanandum::new(sc.fact.clone()).unwrap();
        let e = parse_base(
            "Worried(alice). Coping(alice). S1_alt: Worried(X) & Coping(X) -> !DifficultConcentrate(X).",
        )
        .unwrap();
        let r = revise(
            &sc.base(),
            &e,
            &phi,
            &SelectionStrategy::ProtectExplanation,
            Limits::default(),
        )
        .unwrap();
        let c = classify_revision(&sc, &r, DEFAULT_NON_MINIMAL_THRESHOLD).unwrap();
        assert_eq!(c.altered, ["S1"]);
        assert_eq!(c.label, RevisionClass::NonMinimal);

        let b = parse_base("S1: Worried(X) -> Insomnia(X).").unwrap();
        let e = parse_base("Insomnia(alice).").unwrap();
        let phi = Explanandum::parse("Insomnia(alice)").unwrap();
        let r = revise(
            &b,
            &e,
            &phi,
            &SelectionStrategy::MinCardinality,
            Limits::default(),
        )
        .unwrap();
        assert!(r.is_vacuous());
    }
}
