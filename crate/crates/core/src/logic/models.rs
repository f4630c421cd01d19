//! Naive truth-table model enumeration. Shares nothing with the clausal
//! solver, so it serves as an independent oracle for it.

use std::collections::BTreeMap;

use super::signature::Signature;
use super::syntax::{Atom, Formula, Literal};
use crate::error::{Error, Result};

pub const DEFAULT_MODEL_CAP: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpretation {
    pub assignment: BTreeMap<Atom, bool>,
}

impl Interpretation {
    pub fn holds_literal(&self, lit: &Literal) -> bool {
        let v = self.assignment.get(&lit.atom).copied().unwrap_or(false);
        v != lit.negated
    }

    pub fn satisfies(&self, formula: &Formula) -> bool {
        match formula {
            Formula::Fact(l) => self.holds_literal(l),
            Formula::Rule(r) => {
                !r.body().iter().all(|l| self.holds_literal(l)) || self.holds_literal(r.head())
            }
        }
    }
}

/// The Herbrand base of `sig` extended with any atom occurring in `g`.
fn atoms_of(g: &[Formula], sig: &Signature) -> Vec<Atom> {
    let mut atoms = sig.herbrand_base();
    for f in g {
        for l in f.literals() {
            atoms.push(l.atom.clone());
        }
    }
    atoms.sort();
    atoms.dedup();
    atoms
}

/// Every interpretation of the Herbrand base satisfying all of `g`, in
/// binary-counting order over the sorted atoms (first atom most significant,
/// false before true).
pub fn enumerate_models(g: &[Formula], sig: &Signature, cap: usize) -> Result<Vec<Interpretation>> {
    let atoms = atoms_of(g, sig);
    if atoms.len() > cap || atoms.len() >= usize::BITS as usize {
        return Err(Error::CapExceeded {
            what: "Herbrand atom",
            count: atoms.len(),
            cap,
        });
    }
    let n = atoms.len();
    let mut models = Vec::new();
    for bits in 0u64..(1u64 << n) {
        let assignment: BTreeMap<Atom, bool> = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), bits >> (n - 1 - i) & 1 == 1))
            .collect();
        let interp = Interpretation { assignment };
        if g.iter().all(|f| interp.satisfies(f)) {
            models.push(interp);
        }
    }
    Ok(models)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wor() -> Literal {
        Literal::pos(Atom::ground("Wor", &["charlie"]))
    }

    fn sig_of(g: &[Formula]) -> Signature {
        let mut s = Signature::new();
        for f in g {
            s.add_formula(f).unwrap();
        }
        s
    }

    #[test]
    fn single_fact_has_one_model() {
        let g = vec![Formula::Fact(wor())];
        assert_eq!(enumerate_models(&g, &sig_of(&g), 24).unwrap().len(), 1);
    }

    #[test]
    fn contradiction_has_no_model() {
        let g = vec![Formula::Fact(wor()), Formula::Fact(wor().negate())];
        assert!(enumerate_models(&g, &sig_of(&g), 24).unwrap().is_empty());
    }

    #[test]
    fn cap_is_enforced() {
        let mut sig = Signature::new();
        for c in ["a", "b", "c", "d", "e"] {
            sig.add_atom(&Atom::ground("P", &[c])).unwrap();
        }
        let err = enumerate_models(&[], &sig, 4).unwrap_err();
        assert!(matches!(
            err,
            Error::CapExceeded {
                count: 5,
                cap: 4,
                ..
            }
        ));
    }

    #[test]
    fn canonical_order_false_first() {
        let mut sig = Signature::new();
        sig.add_atom(&Atom::ground("P", &["a"])).unwrap();
        let ms = enumerate_models(&[], &sig, 24).unwrap();
        assert_eq!(ms.len(), 2);
        assert!(!ms[0].assignment.values().next().unwrap());
    }
}
