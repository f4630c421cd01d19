use std::fmt::Write;

use crate::logic::{BeliefBase, Literal};

/// Whether every label equals the one the parser would assign by default to
/// the statement at its rendered position.
fn default_labeled(base: &BeliefBase) -> bool {
    let facts = base
        .facts()
        .enumerate()
        .all(|(i, s)| s.label == format!("f{}", i + 1));
    let rules = base
        .rules()
        .enumerate()
        .all(|(i, s)| s.label == format!("r{}", i + 1));
    facts && rules
}

/// Canonical text: one statement per line, facts before rules, each group in
/// lexicographic order. Labels are written only when they differ from the
/// defaults, in which case all of them are written.
pub fn render_base(base: &BeliefBase) -> String {
    let with_labels = !default_labeled(base);
    let mut out = String::new();
    for s in base.statements() {
        if with_labels {
            let _ = write!(out, "{}: ", s.label);
        }
        let _ = writeln!(out, "{}.", s.formula);
    }
    out
}

/// Formulas only, on one line: `Wor(charlie). !Ins(charlie).`
pub fn render_formulas(base: &BeliefBase) -> String {
    base.formulas()
        .map(|f| format!("{f}."))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render_conjunction(lits: &[Literal]) -> String {
    lits.iter()
        .map(Literal::to_string)
        .collect::<Vec<_>>()
        .join(" & ")
}
