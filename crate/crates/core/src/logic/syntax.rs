//! Terms, literals, rules and labeled belief bases.
//!
//! Every type here is immutable once built. Ordering between formulas is the
//! engine-wide canonical order: facts before rules, then lexicographic on the
//! rendered text. All tie-breaking downstream relies on it.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Const(String),
    Var(String),
}

impl Term {
    pub fn name(&self) -> &str {
        match self {
            Term::Const(n) | Term::Var(n) => n,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    /// Classifies an identifier in argument position: uppercase-led names
    /// are variables, everything else is a constant.
    pub fn from_ident(ident: &str) -> Term {
        if ident.starts_with(|c: char| c.is_ascii_uppercase()) {
            Term::Var(ident.to_string())
        } else {
            Term::Const(ident.to_string())
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            predicate: predicate.into(),
            args,
        }
    }

    /// Shorthand for a ground atom over constants.
    pub fn ground(predicate: impl Into<String>, constants: &[&str]) -> Self {
        Atom::new(
            predicate,
            constants
                .iter()
                .map(|c| Term::Const(c.to_string()))
                .collect(),
        )
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn is_ground(&self) -> bool {
        !self.args.iter().any(Term::is_var)
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.args.iter().filter(|t| t.is_var()).map(Term::name)
    }

    pub fn substitute(&self, binding: &BTreeMap<&str, &str>) -> Atom {
        let args = self
            .args
            .iter()
            .map(|t| match t {
                Term::Var(v) => match binding.get(v.as_str()) {
                    Some(c) => Term::Const(c.to_string()),
                    None => t.clone(),
                },
                Term::Const(_) => t.clone(),
            })
            .collect();
        Atom::new(self.predicate.clone(), args)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, t) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{t}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub negated: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal {
            atom,
            negated: false,
        }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal {
            atom,
            negated: true,
        }
    }

    pub fn negate(&self) -> Self {
        Literal {
            atom: self.atom.clone(),
            negated: !self.negated,
        }
    }

    pub fn is_ground(&self) -> bool {
        self.atom.is_ground()
    }

    pub fn substitute(&self, binding: &BTreeMap<&str, &str>) -> Literal {
        Literal {
            atom: self.atom.substitute(binding),
            negated: self.negated,
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("!")?;
        }
        write!(f, "{}", self.atom)
    }
}

/// A conjunction of literals implying a single literal. Variables are
/// implicitly universally quantified and must be range-restricted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    body: Vec<Literal>,
    head: Literal,
}

impl Rule {
    pub fn new(body: Vec<Literal>, head: Literal) -> Result<Self> {
        let rule = Rule { body, head };
        if rule.body.is_empty() {
            return Err(Error::EmptyRuleBody(rule.to_string()));
        }
        let body_vars: BTreeSet<&str> = rule.body.iter().flat_map(|l| l.atom.variables()).collect();
        if let Some(v) = rule.head.atom.variables().find(|v| !body_vars.contains(v)) {
            return Err(Error::RangeRestriction {
                rule: rule.to_string(),
                variable: v.to_string(),
            });
        }
        Ok(rule)
    }

    pub fn body(&self) -> &[Literal] {
        &self.body
    }

    pub fn head(&self) -> &Literal {
        &self.head
    }

    /// Variables in first-occurrence order.
    pub fn variables(&self) -> Vec<&str> {
        let mut seen = Vec::new();
        for v in self
            .body
            .iter()
            .chain(std::iter::once(&self.head))
            .flat_map(|l| l.atom.variables())
        {
            if !seen.contains(&v) {
                seen.push(v);
            }
        }
        seen
    }

    pub fn is_ground(&self) -> bool {
        self.body.iter().all(Literal::is_ground) && self.head.is_ground()
    }

    pub fn substitute(&self, binding: &BTreeMap<&str, &str>) -> Rule {
        Rule {
            body: self.body.iter().map(|l| l.substitute(binding)).collect(),
            head: self.head.substitute(binding),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.body.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, " -> {}", self.head)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Fact(Literal),
    Rule(Rule),
}

impl Formula {
    pub fn is_ground(&self) -> bool {
        match self {
            Formula::Fact(l) => l.is_ground(),
            Formula::Rule(r) => r.is_ground(),
        }
    }

    pub fn is_rule(&self) -> bool {
        matches!(self, Formula::Rule(_))
    }

    pub fn literals(&self) -> Box<dyn Iterator<Item = &Literal> + '_> {
        match self {
            Formula::Fact(l) => Box::new(std::iter::once(l)),
            Formula::Rule(r) => Box::new(r.body.iter().chain(std::iter::once(&r.head))),
        }
    }

    /// The canonical serialized form; the key of the canonical ordering.
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Fact(l) => write!(f, "{l}"),
            Formula::Rule(r) => write!(f, "{r}"),
        }
    }
}

impl Ord for Formula {
    fn cmp(&self, other: &Self) -> Ordering {
        self.is_rule()
            .cmp(&other.is_rule())
            .then_with(|| self.canonical().cmp(&other.canonical()))
    }
}

impl PartialOrd for Formula {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Literal> for Formula {
    fn from(l: Literal) -> Self {
        Formula::Fact(l)
    }
}

impl From<Rule> for Formula {
    fn from(r: Rule) -> Self {
        Formula::Rule(r)
    }
}

/// A formula with the label used to report retractions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Statement {
    pub label: String,
    pub formula: Formula,
}

impl Statement {
    pub fn new(label: impl Into<String>, formula: impl Into<Formula>) -> Self {
        Statement {
            label: label.into(),
            formula: formula.into(),
        }
    }
}

impl Ord for Statement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.formula
            .cmp(&other.formula)
            .then_with(|| self.label.cmp(&other.label))
    }
}

impl PartialOrd for Statement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.label, self.formula)
    }
}

/// Facts plus rules, each labeled. Statements are kept in canonical order,
/// so two bases with the same labeled formulas compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BeliefBase {
    statements: Vec<Statement>,
}

impl BeliefBase {
    pub fn new(mut statements: Vec<Statement>) -> Result<Self> {
        statements.sort();
        for w in statements.windows(2) {
            if w[0].formula == w[1].formula {
                return Err(Error::DuplicateElement(w[0].formula.canonical()));
            }
        }
        let mut labels = BTreeSet::new();
        for s in &statements {
            if !labels.insert(s.label.as_str()) {
                return Err(Error::DuplicateLabel(s.label.clone()));
            }
        }
        Ok(BeliefBase { statements })
    }

    /// Builds a base from bare formulas, labeling facts `f1..` and rules
    /// `r1..` in the order given.
    pub fn from_formulas(formulas: impl IntoIterator<Item = Formula>) -> Result<Self> {
        let (mut nf, mut nr) = (0, 0);
        let statements = formulas
            .into_iter()
            .map(|f| {
                let label = if f.is_rule() {
                    nr += 1;
                    format!("r{nr}")
                } else {
                    nf += 1;
                    format!("f{nf}")
                };
                Statement::new(label, f)
            })
            .collect();
        BeliefBase::new(statements)
    }

    pub fn empty() -> Self {
        BeliefBase::default()
    }

    pub fn statements(&self) -> &[Statement] {
        &self.statements
    }

    pub fn facts(&self) -> impl Iterator<Item = &Statement> {
        self.statements.iter().filter(|s| !s.formula.is_rule())
    }

    pub fn rules(&self) -> impl Iterator<Item = &Statement> {
        self.statements.iter().filter(|s| s.formula.is_rule())
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.statements.iter().map(|s| &s.formula)
    }

    pub fn len(&self) -> usize {
        self.statements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.statements.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&Statement> {
        self.statements.iter().find(|s| s.label == label)
    }

    pub fn contains_formula(&self, formula: &Formula) -> bool {
        self.statements.iter().any(|s| &s.formula == formula)
    }

    pub fn formula_set(&self) -> BTreeSet<&Formula> {
        self.formulas().collect()
    }

    /// Keeps the statements matching `keep`.
    pub fn filtered(&self, mut keep: impl FnMut(&Statement) -> bool) -> BeliefBase {
        BeliefBase {
            statements: self
                .statements
                .iter()
                .filter(|s| keep(s))
                .cloned()
                .collect(),
        }
    }
}

impl fmt::Display for BeliefBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.statements.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", s.formula)?;
        }
        f.write_str("}")
    }
}
