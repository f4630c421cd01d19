//! Inconsistency problems: conditional and categorical statements plus a
//! conflicting fact, optionally with an explanation of the fact.
//!
//! File layout:
//!
//! ```text
//! [meta]
//! id: exp1_s5
//! type: II
//! [statements]
//! S1: conditional: Worried(X) -> DifficultConcentrate(X).
//! S2: conditional: Worried(X) -> Insomnia(X).
//! S3: categorical: Worried(alice).
//! [fact]
//! !DifficultConcentrate(alice).
//! [explanation]
//! E1: Coping(alice).
//! E2: Coping(X) -> !DifficultConcentrate(X).
//! ```

use std::fmt::{self, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::json::{JsonBase, JsonLiteral};
use super::lexer::Token;
use super::parser::{assign_labels, Parser};
use super::render::{render_base, render_conjunction};
use super::ParseError;
use crate::error::{Error, Result};
use crate::logic::{
    collect_signature, ground, is_consistent, BeliefBase, Formula, Literal, SignaturePart,
    Statement,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ProblemType {
    I,
    II,
    III,
}

impl ProblemType {
    fn conditionals(self) -> usize {
        match self {
            ProblemType::I => 1,
            ProblemType::II | ProblemType::III => 2,
        }
    }
}

impl fmt::Display for ProblemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProblemType::I => "I",
            ProblemType::II => "II",
            ProblemType::III => "III",
        })
    }
}

impl FromStr for ProblemType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "I" => Ok(ProblemType::I),
            "II" => Ok(ProblemType::II),
            "III" => Ok(ProblemType::III),
            other => Err(format!("unknown problem type `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StatementKind {
    Conditional,
    Categorical,
}

impl fmt::Display for StatementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StatementKind::Conditional => "conditional",
            StatementKind::Categorical => "categorical",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScenarioStatement {
    pub label: String,
    pub kind: StatementKind,
    pub formula: Formula,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scenario {
    pub id: String,
    pub problem_type: ProblemType,
    statements: Vec<ScenarioStatement>,
    pub fact: Vec<Literal>,
    pub explanation: Option<BeliefBase>,
}

impl Scenario {
    /// Builds and validates a scenario. Statements are kept sorted by label.
    pub fn new(
        id: impl Into<String>,
        problem_type: ProblemType,
        mut statements: Vec<ScenarioStatement>,
        fact: Vec<Literal>,
        explanation: Option<BeliefBase>,
    ) -> Result<Self> {
        statements.sort_by(|a, b| a.label.cmp(&b.label));
        let sc = Scenario {
            id: id.into(),
            problem_type,
            statements,
            fact,
            explanation,
        };
        sc.validate()?;
        Ok(sc)
    }

    pub fn statements(&self) -> &[ScenarioStatement] {
        &self.statements
    }

    pub fn kind_of(&self, label: &str) -> Option<StatementKind> {
        self.statements
            .iter()
            .find(|s| s.label == label)
            .map(|s| s.kind)
    }

    /// The statements as a belief base, labels preserved.
    pub fn base(&self) -> BeliefBase {
        BeliefBase::new(
            self.statements
                .iter()
                .map(|s| Statement::new(s.label.clone(), s.formula.clone()))
                .collect(),
        )
        .expect("validated scenario statements form a base")
    }

    fn validate(&self) -> Result<()> {
        let invalid = |m: String| Err(Error::ScenarioInvalid(m));
        let conditionals = self
            .statements
            .iter()
            .filter(|s| s.kind == StatementKind::Conditional)
            .count();
        let categoricals = self.statements.len() - conditionals;
        let want = self.problem_type.conditionals();
        if conditionals != want || categoricals != 1 {
            return invalid(format!(
                "type {} needs {want} conditional and 1 categorical statements, found {conditionals} and {categoricals}",
                self.problem_type
            ));
        }
        for s in &self.statements {
            let is_rule = s.formula.is_rule();
            if is_rule != (s.kind == StatementKind::Conditional) {
                return invalid(format!(
                    "statement {} is marked {} but is a {}",
                    s.label,
                    s.kind,
                    if is_rule { "rule" } else { "fact" }
                ));
            }
        }
        let fact_len = self.fact.len();
        match self.problem_type {
            ProblemType::III if fact_len < 2 => {
                return invalid(format!(
                    "type III fact needs at least 2 literals, found {fact_len}"
                ))
            }
            ProblemType::I | ProblemType::II if fact_len != 1 => {
                return invalid(format!(
                    "type {} fact needs exactly 1 literal, found {fact_len}",
                    self.problem_type
                ))
            }
            _ => {}
        }
        let base = BeliefBase::new(
            self.statements
                .iter()
                .map(|s| Statement::new(s.label.clone(), s.formula.clone()))
                .collect(),
        )?;
        let empty = BeliefBase::empty();
        let explanation = self.explanation.as_ref().unwrap_or(&empty);
        let sig = collect_signature(&[
            SignaturePart::Base(&base),
            SignaturePart::Literals(&self.fact),
            SignaturePart::Base(explanation),
        ])?;
        let mut g = ground(&base, &sig)?.formulas;
        g.extend(self.fact.iter().cloned().map(Formula::Fact));
        if is_consistent(&g) {
            return invalid(
                "fact must be inconsistent with the statements, but it is consistent".into(),
            );
        }
        Ok(())
    }
}

fn section_header(p: &mut Parser) -> Result<(String, super::SourceSpan), ParseError> {
    p.expect(Token::LBracket)?;
    let name = p.ident()?;
    p.expect(Token::RBracket)?;
    Ok(name)
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let mut p = Parser::new(text)?;
    let mut id = None;
    let mut problem_type = None;
    let mut statements = None;
    let mut fact = None;
    let mut explanation = None;
    let mut header_span = p.here();

    while !p.at_end() {
        let (section, span) = section_header(&mut p)?;
        header_span = span;
        match section.as_str() {
            "meta" => {
                while matches!(p.peek(), Some(Token::Ident(_))) {
                    let (key, key_span) = p.ident()?;
                    p.expect(Token::Colon)?;
                    let (value, value_span) = p.ident()?;
                    match key.as_str() {
                        "id" => id = Some(value),
                        "type" => {
                            problem_type = Some(value.parse::<ProblemType>().map_err(|m| {
                                ParseError::new(
                                    value_span,
                                    m,
                                    vec!["I".into(), "II".into(), "III".into()],
                                )
                            })?)
                        }
                        _ => {
                            return Err(ParseError::new(
                                key_span,
                                format!("unknown meta key `{key}`"),
                                vec!["id".into(), "type".into()],
                            )
                            .into())
                        }
                    }
                }
            }
            "statements" => {
                let mut out = Vec::new();
                while matches!(p.peek(), Some(Token::Ident(_))) {
                    let (label, _) = p.ident()?;
                    p.expect(Token::Colon)?;
                    let (kind, kind_span) = p.ident()?;
                    let kind = match kind.as_str() {
                        "conditional" => StatementKind::Conditional,
                        "categorical" => StatementKind::Categorical,
                        _ => {
                            return Err(ParseError::new(
                                kind_span,
                                format!("unknown statement kind `{kind}`"),
                                vec!["conditional".into(), "categorical".into()],
                            )
                            .into())
                        }
                    };
                    p.expect(Token::Colon)?;
                    let formula = p.formula()?;
                    p.expect(Token::Dot)?;
                    out.push(ScenarioStatement {
                        label,
                        kind,
                        formula,
                    });
                }
                statements = Some(out);
            }
            "fact" => fact = Some(p.conjunction()?),
            "explanation" => explanation = Some(assign_labels(p.statements()?)?),
            other => {
                return Err(ParseError::new(
                    span,
                    format!("unknown section `{other}`"),
                    ["meta", "statements", "fact", "explanation"]
                        .iter()
                        .map(|s| s.to_string())
                        .collect(),
                )
                .into())
            }
        }
        if !p.at_end() && p.peek() != Some(&Token::LBracket) {
            return Err(p.error("expected section header", &["`[`"]).into());
        }
    }

    let missing = |what: &str| -> Error {
        ParseError::new(
            header_span,
            format!("missing {what}"),
            vec![what.to_string()],
        )
        .into()
    };
    let statements = statements.ok_or_else(|| missing("[statements] section"))?;
    let labels: std::collections::BTreeSet<_> = statements.iter().map(|s| &s.label).collect();
    if labels.len() != statements.len() {
        return Err(Error::ScenarioInvalid(
            "statement labels must be distinct".into(),
        ));
    }
    Scenario::new(
        id.ok_or_else(|| missing("meta id"))?,
        problem_type.ok_or_else(|| missing("meta type"))?,
        statements,
        fact.ok_or_else(|| missing("[fact] section"))?,
        explanation,
    )
}

pub fn render_scenario(sc: &Scenario) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "[meta]\nid: {}\ntype: {}\n", sc.id, sc.problem_type);
    out.push_str("[statements]\n");
    for s in &sc.statements {
        let _ = writeln!(out, "{}: {}: {}.", s.label, s.kind, s.formula);
    }
    let _ = writeln!(out, "\n[fact]\n{}.", render_conjunction(&sc.fact));
    if let Some(e) = &sc.explanation {
        let _ = write!(out, "\n[explanation]\n{}", render_base(e));
    }
    out
}

#[derive(Serialize)]
struct JsonScenario {
    id: String,
    #[serde(rename = "type")]
    problem_type: ProblemType,
    statements: Vec<JsonScenarioStatement>,
    fact: Vec<JsonLiteral>,
    explanation: Option<JsonBase>,
}

#[derive(Serialize)]
struct JsonScenarioStatement {
    label: String,
    kind: StatementKind,
    formula: String,
}

pub fn scenario_to_json(sc: &Scenario) -> String {
    let j = JsonScenario {
        id: sc.id.clone(),
        problem_type: sc.problem_type,
        statements: sc
            .statements
            .iter()
            .map(|s| JsonScenarioStatement {
                label: s.label.clone(),
                kind: s.kind,
                formula: s.formula.canonical(),
            })
            .collect(),
        fact: sc.fact.iter().map(JsonLiteral::from).collect(),
        explanation: sc.explanation.as_ref().map(JsonBase::from),
    };
    serde_json::to_string_pretty(&j).expect("scenario serializes")
}
