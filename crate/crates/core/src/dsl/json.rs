//! JSON mirror of the textual DSL. Field names are stable.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::{
    collect_signature, Atom, BeliefBase, Formula, Literal, Rule, SignaturePart, Statement, Term,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonLiteral {
    pub predicate: String,
    pub args: Vec<String>,
    pub negated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonFact {
    pub label: String,
    #[serde(flatten)]
    pub literal: JsonLiteral,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonRule {
    pub label: String,
    pub body: Vec<JsonLiteral>,
    pub head: JsonLiteral,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonBase {
    pub facts: Vec<JsonFact>,
    pub rules: Vec<JsonRule>,
}

impl From<&Literal> for JsonLiteral {
    fn from(l: &Literal) -> Self {
        JsonLiteral {
            predicate: l.atom.predicate.clone(),
            args: l.atom.args.iter().map(|t| t.name().to_string()).collect(),
            negated: l.negated,
        }
    }
}

impl JsonLiteral {
    pub fn to_literal(&self) -> Literal {
        Literal {
            atom: Atom::new(
                self.predicate.clone(),
                self.args.iter().map(|a| Term::from_ident(a)).collect(),
            ),
            negated: self.negated,
        }
    }
}

impl From<&BeliefBase> for JsonBase {
    fn from(base: &BeliefBase) -> Self {
        let mut out = JsonBase::default();
        for s in base.statements() {
            match &s.formula {
                Formula::Fact(l) => out.facts.push(JsonFact {
                    label: s.label.clone(),
                    literal: l.into(),
                }),
                Formula::Rule(r) => out.rules.push(JsonRule {
                    label: s.label.clone(),
                    body: r.body().iter().map(JsonLiteral::from).collect(),
                    head: r.head().into(),
                }),
            }
        }
        out
    }
}

impl JsonBase {
    pub fn to_base(&self) -> Result<BeliefBase> {
        let mut statements = Vec::new();
        for f in &self.facts {
            let l = f.literal.to_literal();
            if !l.is_ground() {
                return Err(Error::NotGround(l.to_string()));
            }
            statements.push(Statement::new(f.label.clone(), l));
        }
        for r in &self.rules {
            let rule = Rule::new(
                r.body.iter().map(JsonLiteral::to_literal).collect(),
                r.head.to_literal(),
            )?;
            statements.push(Statement::new(r.label.clone(), rule));
        }
        let base = BeliefBase::new(statements)?;
        collect_signature(&[SignaturePart::Base(&base)])?;
        Ok(base)
    }
}

pub fn base_to_json(base: &BeliefBase) -> String {
    serde_json::to_string_pretty(&JsonBase::from(base)).expect("base serializes")
}

pub fn base_from_json(text: &str) -> Result<BeliefBase> {
    let j: JsonBase = serde_json::from_str(text)?;
    j.to_base()
}
