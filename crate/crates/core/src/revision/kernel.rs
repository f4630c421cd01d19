//! The union B ∪ E with provenance, and its correction kernel: every subset
//! whose removal leaves a consistent, nonempty remainder.

use std::collections::BTreeSet;

use serde::Serialize;

use super::explanation::Explanandum;
use crate::error::{Error, Result};
use crate::logic::{
    collect_signature, ground_formula, BeliefBase, ClauseDb, Formula, Literal, Signature,
    SignaturePart, Statement,
};

pub const DEFAULT_MAX_GROUND: usize = 24;

/// Resource caps shared by the enumeration-based operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of ground formulas in B ∪ E.
    pub max_ground: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_ground: DEFAULT_MAX_GROUND,
        }
    }
}

/// B ∪ E as a labeled base. Elements present in both keep B's label; an
/// explanation label that clashes with a different B element is prefixed
/// with `E_`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combined {
    base: BeliefBase,
    in_base: Vec<bool>,
    in_explanation: Vec<bool>,
}

impl Combined {
    pub fn new(prior: &BeliefBase, explanation: &BeliefBase) -> Result<Self> {
        let mut statements: Vec<Statement> = prior.statements().to_vec();
        let mut labels: BTreeSet<String> = statements.iter().map(|s| s.label.clone()).collect();
        for s in explanation.statements() {
            if prior.contains_formula(&s.formula) {
                continue;
            }
            let mut label = s.label.clone();
            while labels.contains(&label) {
                label = format!("E_{label}");
            }
            labels.insert(label.clone());
            statements.push(Statement::new(label, s.formula.clone()));
        }
        let base = BeliefBase::new(statements)?;
        let in_base = base.formulas().map(|f| prior.contains_formula(f)).collect();
        let in_explanation = base
            .formulas()
            .map(|f| explanation.contains_formula(f))
            .collect();
        Ok(Combined {
            base,
            in_base,
            in_explanation,
        })
    }

    pub fn base(&self) -> &BeliefBase {
        &self.base
    }

    pub fn statements(&self) -> &[Statement] {
        self.base.statements()
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn in_base(&self, i: usize) -> bool {
        self.in_base[i]
    }

    pub fn in_explanation(&self, i: usize) -> bool {
        self.in_explanation[i]
    }
}

/// One element of the correction kernel. `indices` point into the union's
/// statements and are ascending, so `elements` are in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrectionSet {
    pub indices: Vec<usize>,
    pub elements: Vec<Statement>,
    /// Whether any element comes from the explanation.
    pub touches_explanation: bool,
    /// Whether the remainder entails the explanandum; `None` when the
    /// kernel was enumerated without one.
    pub preserves_explanandum: Option<bool>,
}

impl CorrectionSet {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn formulas(&self) -> BTreeSet<&Formula> {
        self.elements.iter().map(|s| &s.formula).collect()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.elements.iter().map(|s| s.label.as_str()).collect()
    }

    /// `{a, b}` over canonical formula text.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .elements
            .iter()
            .map(|s| s.formula.canonical())
            .collect();
        format!("{{{}}}", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JsonCorrectionElement {
    pub label: String,
    pub formula: String,
}

impl CorrectionSet {
    pub fn to_json(&self) -> Vec<JsonCorrectionElement> {
        self.elements
            .iter()
            .map(|s| JsonCorrectionElement {
                label: s.label.clone(),
                formula: s.formula.canonical(),
            })
            .collect()
    }
}

/// B ∪ E grounded and clausified once, ready for subset queries.
#[derive(Clone, Debug)]
pub struct RevisionContext {
    combined: Combined,
    signature: Signature,
    db: ClauseDb,
    phi: Option<Explanandum>,
    ground_size: usize,
}

impl RevisionContext {
    pub fn new(
        prior: &BeliefBase,
        explanation: &BeliefBase,
        phi: Option<&Explanandum>,
        limits: Limits,
    ) -> Result<Self> {
        let lits: &[Literal] = phi.map(|p| p.literals()).unwrap_or(&[]);
        let signature = collect_signature(&[
            SignaturePart::Base(prior),
            SignaturePart::Base(explanation),
            SignaturePart::Literals(lits),
        ])?;
        Self::with_signature(prior, explanation, phi, signature, limits)
    }

    pub fn with_signature(
        prior: &BeliefBase,
        explanation: &BeliefBase,
        phi: Option<&Explanandum>,
        signature: Signature,
        limits: Limits,
    ) -> Result<Self> {
        let combined = Combined::new(prior, explanation)?;
        let ground_size = crate::logic::ground_size(combined.base(), &signature);
        if ground_size > limits.max_ground {
            return Err(Error::CapExceeded {
                what: "ground formula",
                count: ground_size,
                cap: limits.max_ground,
            });
        }
        if combined.len() > 63 {
            return Err(Error::CapExceeded {
                what: "union element",
                count: combined.len(),
                cap: 63,
            });
        }
        let groups = combined
            .base()
            .formulas()
            .map(|f| ground_formula(f, &signature))
            .collect::<Result<Vec<_>>>()?;
        let db = ClauseDb::new(groups.iter());
        Ok(RevisionContext {
            combined,
            signature,
            db,
            phi: phi.cloned(),
            ground_size,
        })
    }

    pub fn combined(&self) -> &Combined {
        &self.combined
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn explanandum(&self) -> Option<&Explanandum> {
        self.phi.as_ref()
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn union_consistent(&self) -> bool {
        self.db.consistent(|_| true)
    }

    /// Consistency of the union minus the elements in `removed`.
    pub fn remainder_consistent(&self, removed: u64) -> bool {
        self.db.consistent(|i| removed >> i & 1 == 0)
    }

    pub fn remainder_entails(&self, removed: u64, phi: &[Literal]) -> bool {
        self.db.entails(|i| removed >> i & 1 == 0, phi)
    }

    fn make_set(&self, indices: Vec<usize>) -> CorrectionSet {
        let mask = indices.iter().fold(0u64, |m, &i| m | 1 << i);
        let preserves = self
            .phi
            .as_ref()
            .map(|p| self.remainder_entails(mask, p.literals()));
        CorrectionSet {
            elements: indices
                .iter()
                .map(|&i| self.combined.statements()[i].clone())
                .collect(),
            touches_explanation: indices.iter().any(|&i| self.combined.in_explanation(i)),
            preserves_explanandum: preserves,
            indices,
        }
    }

    /// The correction kernel, lazily, by cardinality then lexicographically.
    /// Empty when the union is consistent.
    pub fn kernel(&self) -> KernelStream<'_> {
        let n = self.combined.len();
        KernelStream {
            ctx: self,
            n,
            next: if n > 1 && !self.union_consistent() {
                Some((0..1).collect())
            } else {
                None
            },
        }
    }

    /// Kernel members whose removal keeps the explanandum entailed.
    pub fn admissible(&self) -> impl Iterator<Item = CorrectionSet> + '_ {
        self.kernel()
            .filter(|c| c.preserves_explanandum == Some(true))
    }
}

/// Iterator over the correction kernel.
pub struct KernelStream<'a> {
    ctx: &'a RevisionContext,
    n: usize,
    next: Option<Vec<usize>>,
}

/// Next k-combination of `0..n` in lexicographic order, or the first
/// (k+1)-combination once k-combinations are exhausted. Stops below `n`.
fn advance(combo: &mut Vec<usize>, n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    if k + 1 >= n {
        return false;
    }
    *combo = (0..k + 1).collect();
    true
}

impl Iterator for KernelStream<'_> {
    type Item = CorrectionSet;

    fn next(&mut self) -> Option<CorrectionSet> {
        loop {
            let combo = self.next.as_mut()?;
            let current = combo.clone();
            if !advance(combo, self.n) {
                self.next = None;
            }
            let mask = current.iter().fold(0u64, |m, &i| m | 1 << i);
            if self.ctx.remainder_consistent(mask) {
                return Some(self.ctx.make_set(current));
            }
        }
    }
}

/// All correction sets of B ∪ E in canonical order.
pub fn correction_kernel(
    prior: &BeliefBase,
    explanation: &BeliefBase,
    limits: Limits,
) -> Result<Vec<CorrectionSet>> {
    let ctx = RevisionContext::new(prior, explanation, None, limits)?;
    Ok(ctx.kernel().collect())
}

/// The correction sets whose removal keeps `phi` entailed.
pub fn admissible_selections(
    prior: &BeliefBase,
    explanation: &BeliefBase,
    phi: &Explanandum,
    limits: Limits,
) -> Result<Vec<CorrectionSet>> {
    let ctx = RevisionContext::new(prior, explanation, Some(phi), limits)?;
    Ok(ctx.admissible().collect())
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

    #[test]
    fn advance_walks_combinations_by_size() {
        let mut c = vec![0];
        let mut seen = vec![c.clone()];
        while advance(&mut c, 4) {
            seen.push(c.clone());
        }
        // sizes 1..=3 of a 4-set: 4 + 6 + 4
        assert_eq!(seen.len(), 14);
        assert_eq!(seen[4], vec![0, 1]);
        assert_eq!(seen.last().unwrap(), &vec![1, 2, 3]);
    }

    #[test]
    fn insomnia_kernel() {
        let (b, e, _) = insomnia();
        let k = correction_kernel(&b, &e, Limits::default()).unwrap();
        let rendered: Vec<String> = k.iter().map(CorrectionSet::render).collect();
        assert_eq!(
            rendered,
            vec![
                "{!Ins(charlie)}",
                "{Wor(charlie)}",
                "{Wor(charlie) -> Ins(charlie)}",
                "{!Ins(charlie), Wor(charlie)}",
                "{!Ins(charlie), Wor(charlie) -> Ins(charlie)}",
                "{Wor(charlie), Wor(charlie) -> Ins(charlie)}",
            ]
        );
    }

    #[test]
    fn insomnia_admissible() {
        let (b, e, phi) = insomnia();
        let a = admissible_selections(&b, &e, &phi, Limits::default()).unwrap();
        let rendered: Vec<String> = a.iter().map(CorrectionSet::render).collect();
        assert_eq!(
            rendered,
            vec![
                "{Wor(charlie)}",
                "{Wor(charlie) -> Ins(charlie)}",
                "{Wor(charlie), Wor(charlie) -> Ins(charlie)}",
            ]
        );
        assert!(a.iter().all(|c| !c.touches_explanation));
    }

    #[test]
    fn consistent_union_has_empty_kernel() {
        let b = parse_base("Wor(charlie).").unwrap();
        let e = parse_base("Ins(charlie).").unwrap();
        assert!(correction_kernel(&b, &e, Limits::default())
            .unwrap()
            .is_empty());
        let phi = Explanandum::parse("Ins(charlie)").unwrap();
        assert!(admissible_selections(&b, &e, &phi, Limits::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn cap_is_checked() {
        let b = parse_base("P(a). P(b). P(c). P(X) & P(Y) -> Q(X, Y).").unwrap();
        let e = parse_base("!Q(a, a).").unwrap();
        let err = correction_kernel(&b, &e, Limits { max_ground: 8 }).unwrap_err();
        assert!(matches!(
            err,
            Error::CapExceeded {
                count: 13,
                cap: 8,
                ..
            }
        ));
    }

    #[test]
    fn union_provenance_and_relabeling() {
        let b = parse_base("Wor(charlie). Wor(X) -> Ins(X).").unwrap();
        let e = parse_base("Cop(charlie). Wor(charlie).").unwrap();
        let c = Combined::new(&b, &e).unwrap();
        assert_eq!(c.len(), 3);
        let cop = c
            .statements()
            .iter()
            .position(|s| s.formula.to_string() == "Cop(charlie)")
            .unwrap();
        assert_eq!(c.statements()[cop].label, "E_f1");
        assert!(!c.in_base(cop) && c.in_explanation(cop));
        let wor = c
            .statements()
            .iter()
            .position(|s| s.formula.to_string() == "Wor(charlie)")
            .unwrap();
        assert!(c.in_base(wor) && c.in_explanation(wor));
        assert_eq!(c.statements()[wor].label, "f1");
    }
}
