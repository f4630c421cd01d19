use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use super::syntax::{Atom, BeliefBase, Formula, Literal, Term};
use crate::error::{Error, Result};

/// Constants and predicate arities of a problem instance. The constants form
/// the Herbrand universe used for grounding.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub constants: BTreeSet<String>,
    pub predicates: BTreeMap<String, usize>,
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    pub fn add_literal(&mut self, lit: &Literal) -> Result<()> {
        self.add_atom(&lit.atom)
    }

    pub fn add_atom(&mut self, atom: &Atom) -> Result<()> {
        match self.predicates.get(&atom.predicate) {
            Some(&arity) if arity != atom.arity() => {
                return Err(Error::ArityMismatch {
                    predicate: atom.predicate.clone(),
                    first: arity,
                    second: atom.arity(),
                });
            }
            Some(_) => {}
            None => {
                self.predicates.insert(atom.predicate.clone(), atom.arity());
            }
        }
        for t in &atom.args {
            if let Term::Const(c) = t {
                self.constants.insert(c.clone());
            }
        }
        Ok(())
    }

    pub fn add_formula(&mut self, formula: &Formula) -> Result<()> {
        formula.literals().try_for_each(|l| self.add_literal(l))
    }

    pub fn add_base(&mut self, base: &BeliefBase) -> Result<()> {
        base.formulas().try_for_each(|f| self.add_formula(f))
    }

    pub fn merge(&mut self, other: &Signature) -> Result<()> {
        for (p, &a) in &other.predicates {
            match self.predicates.get(p) {
                Some(&arity) if arity != a => {
                    return Err(Error::ArityMismatch {
                        predicate: p.clone(),
                        first: arity,
                        second: a,
                    })
                }
                _ => {
                    self.predicates.insert(p.clone(), a);
                }
            }
        }
        self.constants.extend(other.constants.iter().cloned());
        Ok(())
    }

    /// Every ground atom formable over the signature, sorted.
    pub fn herbrand_base(&self) -> Vec<Atom> {
        let constants: Vec<&str> = self.constants.iter().map(String::as_str).collect();
        let mut atoms = Vec::new();
        for (p, &arity) in &self.predicates {
            if arity == 0 {
                atoms.push(Atom::new(p.clone(), Vec::new()));
                continue;
            }
            for args in (0..arity)
                .map(|_| constants.iter())
                .multi_cartesian_product()
            {
                atoms.push(Atom::ground(
                    p.clone(),
                    &args.into_iter().copied().collect::<Vec<_>>(),
                ));
            }
        }
        atoms.sort();
        atoms
    }

    /// Number of atoms in the Herbrand base without materializing it.
    pub fn herbrand_size(&self) -> usize {
        let n = self.constants.len();
        self.predicates
            .values()
            .map(|&a| n.saturating_pow(a as u32))
            .fold(0usize, usize::saturating_add)
    }
}

/// A piece of a problem instance that contributes to its signature.
#[derive(Clone, Copy, Debug)]
pub enum SignaturePart<'a> {
    Base(&'a BeliefBase),
    Formulas(&'a [Formula]),
    Literals(&'a [Literal]),
}

/// Union of all constants and predicates occurring in the inputs.
pub fn collect_signature(parts: &[SignaturePart<'_>]) -> Result<Signature> {
    let mut sig = Signature::new();
    for part in parts {
        match part {
            SignaturePart::Base(b) => sig.add_base(b)?,
            SignaturePart::Formulas(fs) => fs.iter().try_for_each(|f| sig.add_formula(f))?,
            SignaturePart::Literals(ls) => ls.iter().try_for_each(|l| sig.add_literal(l))?,
        }
    }
    Ok(sig)
}
