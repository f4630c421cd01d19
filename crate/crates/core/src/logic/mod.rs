//! Belief bases, grounding, and classical consistency/entailment.

mod ground;
mod models;
mod sat;
mod signature;
mod syntax;

use std::collections::BTreeSet;

pub use ground::{ground, ground_formula, ground_size, GroundBeliefBase};
pub use models::{enumerate_models, Interpretation, DEFAULT_MODEL_CAP};
pub use sat::{clausify, satisfiable, AtomTable, ClauseDb};
pub use signature::{collect_signature, Signature, SignaturePart};
pub use syntax::{Atom, BeliefBase, Formula, Literal, Rule, Statement, Term};

use crate::error::{Error, Result};

/// True iff some interpretation satisfies every (ground) formula of `g`.
pub fn is_consistent(g: &[Formula]) -> bool {
    ClauseDb::new([g]).consistent(|_| true)
}

/// `g ⊨ phi` for a conjunction of ground literals: `g` together with the
/// negated conjunction is unsatisfiable. Inconsistent `g` entails anything.
pub fn entails(g: &[Formula], phi: &[Literal]) -> bool {
    ClauseDb::new([g]).entails(|_| true, phi)
}

/// `g ⊨ ¬phi`: `g` together with every literal of `phi` is unsatisfiable.
pub fn refutes(g: &[Formula], phi: &[Literal]) -> bool {
    let mut all: Vec<Formula> = g.to_vec();
    all.extend(phi.iter().cloned().map(Formula::Fact));
    !is_consistent(&all)
}

/// Γ(base): every ground literal over the Herbrand base that the grounded
/// base entails. Refuses inconsistent bases.
pub fn consequences(base: &BeliefBase, sig: &Signature) -> Result<BTreeSet<Literal>> {
    let mut sig = sig.clone();
    sig.add_base(base)?;
    let g = ground(base, &sig)?;
    let db = ClauseDb::new([&g.formulas]);
    if !db.consistent(|_| true) {
        return Err(Error::InconsistentBase);
    }
    let mut out = BTreeSet::new();
    for atom in sig.herbrand_base() {
        for lit in [Literal::pos(atom.clone()), Literal::neg(atom)] {
            if db.entails(|_| true, std::slice::from_ref(&lit)) {
                out.insert(lit);
            }
        }
    }
    Ok(out)
}

/// Grounds `base` over its own signature extended by `extra`.
pub fn ground_with(base: &BeliefBase, extra: &Signature) -> Result<GroundBeliefBase> {
    let mut sig = extra.clone();
    sig.add_base(base)?;
    ground(base, &sig)
}
