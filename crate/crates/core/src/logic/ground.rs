use std::collections::BTreeMap;

use itertools::Itertools;

use super::signature::Signature;
use super::syntax::{BeliefBase, Formula};
use crate::error::{Error, Result};

/// The ground version of a belief base. `origin[i]` is the index, within the
/// source base's statements, of the element that produced `formulas[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundBeliefBase {
    pub formulas: Vec<Formula>,
    pub origin: Vec<usize>,
}

impl GroundBeliefBase {
    pub fn len(&self) -> usize {
        self.formulas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.formulas.is_empty()
    }

    /// Ground formulas produced by statement `index` of the source base.
    pub fn instances_of(&self, index: usize) -> impl Iterator<Item = &Formula> {
        self.formulas
            .iter()
            .zip(&self.origin)
            .filter(move |(_, &o)| o == index)
            .map(|(f, _)| f)
    }
}

/// All ground instances of one formula over the constants of `sig`.
pub fn ground_formula(formula: &Formula, sig: &Signature) -> Result<Vec<Formula>> {
    let rule = match formula {
        Formula::Fact(_) => return Ok(vec![formula.clone()]),
        Formula::Rule(r) => r,
    };
    let vars = rule.variables();
    if vars.is_empty() {
        return Ok(vec![formula.clone()]);
    }
    if sig.constants.is_empty() {
        return Err(Error::EmptyUniverse {
            rule: rule.to_string(),
        });
    }
    let constants: Vec<&str> = sig.constants.iter().map(String::as_str).collect();
    let instances = vars
        .iter()
        .map(|_| constants.iter().copied())
        .multi_cartesian_product()
        .map(|values| {
            let binding: BTreeMap<&str, &str> = vars.iter().copied().zip(values).collect();
            Formula::Rule(rule.substitute(&binding))
        })
        .collect();
    Ok(instances)
}

/// Expands every rule of `base` into its ground instances over `sig`.
/// Facts are copied verbatim.
pub fn ground(base: &BeliefBase, sig: &Signature) -> Result<GroundBeliefBase> {
    let mut formulas = Vec::new();
    let mut origin = Vec::new();
    for (i, s) in base.statements().iter().enumerate() {
        for g in ground_formula(&s.formula, sig)? {
            formulas.push(g);
            origin.push(i);
        }
    }
    Ok(GroundBeliefBase { formulas, origin })
}

/// Size of the grounding without building it.
pub fn ground_size(base: &BeliefBase, sig: &Signature) -> usize {
    let n = sig.constants.len();
    base.formulas()
        .map(|f| match f {
            Formula::Rule(r) => n.saturating_pow(r.variables().len() as u32),
            Formula::Fact(_) => 1,
        })
        .fold(0usize, usize::saturating_add)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::syntax::{Atom, Literal, Rule, Statement, Term};

    fn var(n: &str) -> Term {
        Term::Var(n.into())
    }

    fn base_a() -> BeliefBase {
        let rule = Rule::new(
            vec![Literal::pos(Atom::new("Wor", vec![var("X")]))],
            Literal::pos(Atom::new("Ins", vec![var("X")])),
        )
        .unwrap();
        BeliefBase::new(vec![
            Statement::new("f1", Literal::pos(Atom::ground("Wor", &["charlie"]))),
            Statement::new("f2", Literal::pos(Atom::ground("Wor", &["diana"]))),
            Statement::new("r1", rule),
        ])
        .unwrap()
    }

    #[test]
    fn alice_base_grounds_to_two_rule_instances() {
        let base = base_a();
        let mut sig = Signature::new();
        sig.add_base(&base).unwrap();
        let g = ground(&base, &sig).unwrap();
        assert_eq!(g.len(), 4);
        let rule_idx = base
            .statements()
            .iter()
            .position(|s| s.label == "r1")
            .unwrap();
        let inst: Vec<String> = g.instances_of(rule_idx).map(|f| f.to_string()).collect();
        assert_eq!(
            inst,
            vec!["Wor(charlie) -> Ins(charlie)", "Wor(diana) -> Ins(diana)"]
        );
        assert_eq!(ground_size(&base, &sig), 4);
    }

    #[test]
    fn facts_only_base_is_identity() {
        let base = BeliefBase::from_formulas([
            Formula::Fact(Literal::pos(Atom::ground("Wor", &["charlie"]))),
            Formula::Fact(Literal::neg(Atom::ground("Ins", &["charlie"]))),
        ])
        .unwrap();
        let mut sig = Signature::new();
        sig.add_base(&base).unwrap();
        let g = ground(&base, &sig).unwrap();
        assert_eq!(g.formulas, base.formulas().cloned().collect::<Vec<_>>());
    }

    #[test]
    fn single_constant_gives_single_instance() {
        let rule = Rule::new(
            vec![
                Literal::pos(Atom::new("Wor", vec![var("X")])),
                Literal::pos(Atom::new("Cop", vec![var("X")])),
            ],
            Literal::neg(Atom::new("Ins", vec![var("X")])),
        )
        .unwrap();
        let base = BeliefBase::from_formulas([Formula::Rule(rule)]).unwrap();
        let mut sig = Signature::new();
        sig.constants.insert("charlie".into());
        let g = ground(&base, &sig).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(
            g.formulas[0].to_string(),
            "Wor(charlie) & Cop(charlie) -> !Ins(charlie)"
        );
    }

    #[test]
    fn empty_universe_is_an_error() {
        let base = base_a().filtered(|s| s.formula.is_rule());
        let err = ground(&base, &Signature::new()).unwrap_err();
        assert!(matches!(err, Error::EmptyUniverse { .. }));
    }
}
