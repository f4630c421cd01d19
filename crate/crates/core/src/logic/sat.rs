//! Clausal consistency checking: unit propagation plus chronological
//! branching (DPLL). Ground literals become unit clauses and a ground rule
//! `b1 & .. & bn -> h` becomes `!b1 | .. | !bn | h`.

use std::collections::HashMap;

use super::syntax::{Atom, Formula, Literal};

/// Interns ground atoms as 1-based variable numbers.
#[derive(Clone, Debug, Default)]
pub struct AtomTable {
    index: HashMap<Atom, i32>,
}

impl AtomTable {
    pub fn var(&mut self, atom: &Atom) -> i32 {
        let next = self.index.len() as i32 + 1;
        *self.index.entry(atom.clone()).or_insert(next)
    }

    pub fn lit(&mut self, lit: &Literal) -> i32 {
        let v = self.var(&lit.atom);
        if lit.negated {
            -v
        } else {
            v
        }
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }
}

pub fn clausify(formula: &Formula, table: &mut AtomTable) -> Vec<i32> {
    debug_assert!(formula.is_ground(), "clausify on non-ground `{formula}`");
    match formula {
        Formula::Fact(l) => vec![table.lit(l)],
        Formula::Rule(r) => {
            let mut clause: Vec<i32> = r.body().iter().map(|l| -table.lit(l)).collect();
            clause.push(table.lit(r.head()));
            clause
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Value {
    Unset,
    True,
    False,
}

struct Dpll<'a> {
    clauses: Vec<&'a [i32]>,
    values: Vec<Value>,
}

impl<'a> Dpll<'a> {
    fn value(&self, lit: i32) -> Value {
        match self.values[lit.unsigned_abs() as usize] {
            Value::Unset => Value::Unset,
            v if (v == Value::True) == (lit > 0) => Value::True,
            _ => Value::False,
        }
    }

    fn set(&mut self, lit: i32, trail: &mut Vec<usize>) {
        let v = lit.unsigned_abs() as usize;
        self.values[v] = if lit > 0 { Value::True } else { Value::False };
        trail.push(v);
    }

    /// Returns false on conflict.
    fn propagate(&mut self, trail: &mut Vec<usize>) -> bool {
        loop {
            let mut changed = false;
            for i in 0..self.clauses.len() {
                let clause = self.clauses[i];
                let mut unset = None;
                let mut n_unset = 0;
                let mut satisfied = false;
                for &l in clause {
                    match self.value(l) {
                        Value::True => {
                            satisfied = true;
                            break;
                        }
                        Value::Unset => {
                            n_unset += 1;
                            unset = Some(l);
                        }
                        Value::False => {}
                    }
                }
                if satisfied {
                    continue;
                }
                match n_unset {
                    0 => return false,
                    1 => {
                        self.set(unset.unwrap(), trail);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn pick(&self) -> Option<i32> {
        self.clauses.iter().find_map(|c| {
            if c.iter().any(|&l| self.value(l) == Value::True) {
                None
            } else {
                c.iter().copied().find(|&l| self.value(l) == Value::Unset)
            }
        })
    }

    fn search(&mut self) -> bool {
        let mut trail = Vec::new();
        if !self.propagate(&mut trail) {
            self.undo(&trail);
            return false;
        }
        let Some(lit) = self.pick() else {
            return true;
        };
        for choice in [lit, -lit] {
            let mut local = Vec::new();
            self.set(choice, &mut local);
            if self.search() {
                return true;
            }
            self.undo(&local);
        }
        self.undo(&trail);
        false
    }

    fn undo(&mut self, trail: &[usize]) {
        for &v in trail {
            self.values[v] = Value::Unset;
        }
    }
}

/// Satisfiability of a clause set over variables `1..=num_vars`.
pub fn satisfiable<'a>(clauses: impl IntoIterator<Item = &'a [i32]>, num_vars: usize) -> bool {
    let clauses: Vec<&[i32]> = clauses.into_iter().collect();
    if clauses.iter().any(|c| c.is_empty()) {
        return false;
    }
    let mut solver = Dpll {
        clauses,
        values: vec![Value::Unset; num_vars + 1],
    };
    solver.search()
}

/// Clauses grouped by the labeled statement that produced them, so that
/// subsets of a base can be checked by index without re-clausifying.
#[derive(Clone, Debug, Default)]
pub struct ClauseDb {
    table: AtomTable,
    groups: Vec<Vec<Vec<i32>>>,
}

impl ClauseDb {
    pub fn new<'a, G>(groups: impl IntoIterator<Item = G>) -> Self
    where
        G: IntoIterator<Item = &'a Formula>,
    {
        let mut table = AtomTable::default();
        let groups = groups
            .into_iter()
            .map(|g| g.into_iter().map(|f| clausify(f, &mut table)).collect())
            .collect();
        ClauseDb { table, groups }
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    fn selected(&self, keep: impl Fn(usize) -> bool) -> impl Iterator<Item = &[i32]> {
        self.groups
            .iter()
            .enumerate()
            .filter(move |(i, _)| keep(*i))
            .flat_map(|(_, g)| g.iter().map(Vec::as_slice))
    }

    /// Consistency of the groups selected by `keep`.
    pub fn consistent(&self, keep: impl Fn(usize) -> bool) -> bool {
        satisfiable(self.selected(keep), self.table.len())
    }

    /// Whether the selected groups entail the conjunction `phi`.
    pub fn entails(&self, keep: impl Fn(usize) -> bool, phi: &[Literal]) -> bool {
        let mut table = self.table.clone();
        let negated: Vec<i32> = phi.iter().map(|l| -table.lit(l)).collect();
        !satisfiable(
            self.selected(keep)
                .chain(std::iter::once(negated.as_slice())),
            table.len(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pigeonhole_two_into_one_is_unsat() {
        let clauses: Vec<Vec<i32>> = vec![vec![1], vec![2], vec![-1, -2]];
        assert!(!satisfiable(clauses.iter().map(Vec::as_slice), 2));
    }

    #[test]
    fn needs_branching() {
        let clauses: Vec<Vec<i32>> = vec![vec![1, 2], vec![-1, 2], vec![1, -2], vec![-1, -2, 3]];
        assert!(satisfiable(clauses.iter().map(Vec::as_slice), 3));
        let mut unsat = clauses.clone();
        unsat.push(vec![-1, -2]);
        assert!(!satisfiable(unsat.iter().map(Vec::as_slice), 3));
    }

    #[test]
    fn empty_set_is_sat() {
        assert!(satisfiable(std::iter::empty(), 0));
    }
}
