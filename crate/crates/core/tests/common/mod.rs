//! Independent oracles and instance generators shared by the integration
//! tests. Nothing here goes through the SAT path.

#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use revisekit_core::logic::{
    enumerate_models, ground_formula, Atom, BeliefBase, Formula, Interpretation, Literal, Rule,
    Signature, Statement, Term,
};
use revisekit_core::revision::RevisionContext;

/// Unary predicates over a fixed constant pool; `preds * consts` atoms.
pub struct Vocab {
    pub preds: usize,
    pub consts: usize,
}

impl Vocab {
    pub fn atoms(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        for p in 0..self.preds {
            for c in 0..self.consts {
                out.push(Atom::ground(format!("P{p}"), &[&const_name(c)]));
            }
        }
        out
    }

    pub fn signature(&self) -> Signature {
        let mut sig = Signature::new();
        for a in self.atoms() {
            sig.add_atom(&a).unwrap();
        }
        sig
    }
}

fn const_name(i: usize) -> String {
    ((b'a' + i as u8) as char).to_string()
}

fn random_literal(rng: &mut ChaCha8Rng, atoms: &[Atom]) -> Literal {
    let a = atoms.choose(rng).unwrap().clone();
    if rng.gen_bool(0.5) {
        Literal::pos(a)
    } else {
        Literal::neg(a)
    }
}

/// A random ground formula: a literal or a rule with one to three body
/// literals.
pub fn random_ground_formula(rng: &mut ChaCha8Rng, atoms: &[Atom]) -> Formula {
    if rng.gen_bool(0.45) {
        Formula::Fact(random_literal(rng, atoms))
    } else {
        let n = rng.gen_range(1..=3);
        let body = (0..n).map(|_| random_literal(rng, atoms)).collect();
        Formula::Rule(Rule::new(body, random_literal(rng, atoms)).unwrap())
    }
}

/// A unary lifted rule `Pi(X) -> Pj(X)` with random polarities.
fn random_lifted_rule(rng: &mut ChaCha8Rng, preds: usize) -> Formula {
    let lit = |rng: &mut ChaCha8Rng| {
        let a = Atom::new(
            format!("P{}", rng.gen_range(0..preds)),
            vec![Term::Var("X".into())],
        );
        if rng.gen_bool(0.5) {
            Literal::pos(a)
        } else {
            Literal::neg(a)
        }
    };
    let body = vec![lit(rng)];
    Formula::Rule(Rule::new(body, lit(rng)).unwrap())
}

/// `n` distinct random ground formulas.
pub fn random_ground_set(seed: u64, vocab: &Vocab, n: usize) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let atoms = vocab.atoms();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    while out.len() < n {
        let f = random_ground_formula(&mut rng, &atoms);
        if seen.insert(f.canonical()) {
            out.push(f);
        }
    }
    out
}

/// A prior and explanation with `total` distinct formulas between them,
/// occasionally including a lifted rule.
pub fn random_pair(seed: u64, vocab: &Vocab, total: usize) -> (BeliefBase, BeliefBase) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let atoms = vocab.atoms();
    let mut seen = BTreeSet::new();
    let mut formulas = Vec::new();
    while formulas.len() < total {
        // the first formula is ground so the Herbrand universe is nonempty
        let f = if !formulas.is_empty() && rng.gen_bool(0.15) {
            random_lifted_rule(&mut rng, vocab.preds)
        } else {
            random_ground_formula(&mut rng, &atoms)
        };
        if seen.insert(f.canonical()) {
            formulas.push(f);
        }
    }
    let split = rng.gen_range(1..total);
    let label = |prefix: &str, i: usize| format!("{prefix}{i}");
    let prior = formulas[..split]
        .iter()
        .enumerate()
        .map(|(i, f)| Statement::new(label("b", i), f.clone()))
        .collect();
    let expl = formulas[split..]
        .iter()
        .enumerate()
        .map(|(i, f)| Statement::new(label("e", i), f.clone()))
        .collect();
    (
        BeliefBase::new(prior).unwrap(),
        BeliefBase::new(expl).unwrap(),
    )
}

/// Consistency by truth table.
pub fn oracle_consistent(g: &[Formula], sig: &Signature) -> bool {
    !enumerate_models(g, sig, 16).unwrap().is_empty()
}

/// All models by truth table.
pub fn oracle_models(g: &[Formula], sig: &Signature) -> Vec<Interpretation> {
    enumerate_models(g, sig, 16).unwrap()
}

/// Entailment over precomputed models: every model satisfies every literal.
pub fn oracle_entails(models: &[Interpretation], phi: &[Literal]) -> bool {
    models
        .iter()
        .all(|m| phi.iter().all(|l| m.holds_literal(l)))
}

/// Correction sets by filtering every subset of B ∪ E: nonempty, leaving a
/// nonempty consistent remainder, and only when the union is inconsistent.
/// Ordered by size, then by index.
pub fn brute_kernel(ctx: &RevisionContext) -> Vec<Vec<usize>> {
    let sig = ctx.signature();
    let grounded: Vec<Vec<Formula>> = ctx
        .combined()
        .statements()
        .iter()
        .map(|s| ground_formula(&s.formula, sig).unwrap())
        .collect();
    let n = grounded.len();
    let remainder = |mask: u64| -> Vec<Formula> {
        (0..n)
            .filter(|i| mask >> i & 1 == 0)
            .flat_map(|i| grounded[i].iter().cloned())
            .collect()
    };
    if oracle_consistent(&remainder(0), sig) {
        return Vec::new();
    }
    let full = (1u64 << n) - 1;
    let mut out: Vec<Vec<usize>> = (1..full)
        .filter(|&m| oracle_consistent(&remainder(m), sig))
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}
