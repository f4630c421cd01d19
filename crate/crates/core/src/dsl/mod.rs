//! Textual DSL and JSON mirror for belief bases and scenario files.
//!
//! ```text
//! base      := { statement }
//! statement := [ label ":" ] ( fact | rule ) "."
//! fact      := literal
//! rule      := literal { "&" literal } "->" literal
//! literal   := [ "!" ] atom
//! atom      := ident [ "(" term { "," term } ")" ]
//! ```
//!
//! Arguments starting with an uppercase letter are variables; everything
//! else in argument position is a constant. `//` starts a line comment.

mod json;
mod lexer;
mod parser;
mod render;
mod scenario;

use std::fmt;

use thiserror::Error;

pub use json::{base_from_json, base_to_json, JsonBase, JsonFact, JsonLiteral, JsonRule};
pub use parser::{parse_base, parse_conjunction};
pub use render::{render_base, render_conjunction, render_formulas};
pub use scenario::{
    parse_scenario, render_scenario, scenario_to_json, ProblemType, Scenario, ScenarioStatement,
    StatementKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl SourceSpan {
    pub fn new(line: usize, column: usize, length: usize) -> Self {
        debug_assert!(line >= 1 && column >= 1);
        SourceSpan {
            line,
            column,
            length,
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{span}: {message}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn new(span: SourceSpan, message: impl Into<String>, expected: Vec<String>) -> Self {
        let message = message.into();
        debug_assert!(!message.is_empty());
        ParseError {
            span,
            message,
            expected,
        }
    }
}
