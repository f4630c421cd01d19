use std::collections::BTreeSet;

use super::lexer::{tokenize, Spanned, Token};
use super::{ParseError, SourceSpan};
use crate::error::{Error, Result};
use crate::logic::{
    collect_signature, Atom, BeliefBase, Formula, Literal, Rule, SignaturePart, Statement, Term,
};

pub(crate) struct RawStatement {
    pub label: Option<(String, SourceSpan)>,
    pub formula: Formula,
}

pub(crate) struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    pub fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: tokenize(text)?,
            pos: 0,
        })
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn peek(&self) -> Option<&Token> {
        self.peek_at(0)
    }

    pub fn peek_at(&self, k: usize) -> Option<&Token> {
        self.toks.get(self.pos + k).map(|t| &t.token)
    }

    /// Span of the next token, or of the last token at end of input.
    pub fn here(&self) -> SourceSpan {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|t| t.span)
            .unwrap_or(SourceSpan::new(1, 1, 0))
    }

    pub fn error(&self, message: impl Into<String>, expected: &[&str]) -> ParseError {
        let message = match self.toks.get(self.pos) {
            Some(t) => format!("{}, found {}", message.into(), t.token),
            None => format!("{}, found end of input", message.into()),
        };
        ParseError::new(
            self.here(),
            message,
            expected.iter().map(|s| s.to_string()).collect(),
        )
    }

    pub fn bump(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    pub fn eat(&mut self, tok: &Token) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: Token) -> Result<SourceSpan, ParseError> {
        if self.peek() == Some(&tok) {
            Ok(self.bump().unwrap().span)
        } else {
            Err(self.error(format!("expected {}", tok.class()), &[tok.class()]))
        }
    }

    pub fn ident(&mut self) -> Result<(String, SourceSpan), ParseError> {
        match self.peek() {
            Some(Token::Ident(_)) => {
                let t = self.bump().unwrap();
                match t.token {
                    Token::Ident(s) => Ok((s, t.span)),
                    _ => unreachable!(),
                }
            }
            _ => Err(self.error("expected identifier", &["identifier"])),
        }
    }

    pub fn literal(&mut self) -> Result<Literal, ParseError> {
        let negated = self.eat(&Token::Bang);
        let (predicate, _) = self.ident()?;
        let mut args = Vec::new();
        if self.eat(&Token::LParen) {
            loop {
                let (name, _) = self.ident()?;
                args.push(Term::from_ident(&name));
                if self.eat(&Token::Comma) {
                    continue;
                }
                self.expect(Token::RParen)?;
                break;
            }
        }
        Ok(Literal {
            atom: Atom::new(predicate, args),
            negated,
        })
    }

    /// `literal { "&" literal } [ "->" literal ]`, without the terminator.
    pub fn formula(&mut self) -> Result<Formula, ParseError> {
        let start = self.here();
        let mut body = vec![self.literal()?];
        while self.eat(&Token::Amp) {
            body.push(self.literal()?);
        }
        if self.eat(&Token::Arrow) {
            let head = self.literal()?;
            return Rule::new(body, head)
                .map(Formula::Rule)
                .map_err(|e| ParseError::new(start, e.to_string(), vec![]));
        }
        if body.len() > 1 {
            return Err(self.error("a conjunction must be followed by `->`", &["`->`"]));
        }
        let fact = body.pop().unwrap();
        if !fact.is_ground() {
            return Err(ParseError::new(
                start,
                format!("fact `{fact}` contains variables"),
                vec!["ground literal".into()],
            ));
        }
        Ok(Formula::Fact(fact))
    }

    /// `[ label ":" ] formula "."`
    pub fn statement(&mut self) -> Result<RawStatement, ParseError> {
        let label = if matches!(self.peek(), Some(Token::Ident(_)))
            && self.peek_at(1) == Some(&Token::Colon)
        {
            let l = self.ident()?;
            self.expect(Token::Colon)?;
            Some(l)
        } else {
            None
        };
        let formula = self.formula()?;
        self.expect(Token::Dot)?;
        Ok(RawStatement { label, formula })
    }

    /// Statements until end of input or a `[` section header.
    pub fn statements(&mut self) -> Result<Vec<RawStatement>, ParseError> {
        let mut out = Vec::new();
        while !self.at_end() && self.peek() != Some(&Token::LBracket) {
            out.push(self.statement()?);
        }
        Ok(out)
    }

    /// `literal { "&" literal } [ "." ]`, all ground.
    pub fn conjunction(&mut self) -> Result<Vec<Literal>, ParseError> {
        let mut lits = Vec::new();
        loop {
            let span = self.here();
            let l = self.literal()?;
            if !l.is_ground() {
                return Err(ParseError::new(
                    span,
                    format!("literal `{l}` contains variables"),
                    vec!["ground literal".into()],
                ));
            }
            lits.push(l);
            if !self.eat(&Token::Amp) {
                break;
            }
        }
        self.eat(&Token::Dot);
        Ok(lits)
    }
}

/// Assigns `f1, f2, ..` / `r1, r2, ..` in source order to unlabeled
/// statements, skipping labels that are used explicitly.
pub(crate) fn assign_labels(raw: Vec<RawStatement>) -> Result<BeliefBase> {
    let mut explicit = BTreeSet::new();
    for r in &raw {
        if let Some((l, span)) = &r.label {
            if !explicit.insert(l.clone()) {
                return Err(
                    ParseError::new(*span, format!("duplicate label `{l}`"), vec![]).into(),
                );
            }
        }
    }
    let (mut nf, mut nr) = (0, 0);
    let mut fresh = |rule: bool| loop {
        let label = if rule {
            nr += 1;
            format!("r{nr}")
        } else {
            nf += 1;
            format!("f{nf}")
        };
        if !explicit.contains(&label) {
            return label;
        }
    };
    let statements: Vec<Statement> = raw
        .into_iter()
        .map(|r| {
            let label = match r.label {
                Some((l, _)) => l,
                None => fresh(r.formula.is_rule()),
            };
            Statement::new(label, r.formula)
        })
        .collect();
    let base = BeliefBase::new(statements)?;
    collect_signature(&[SignaturePart::Base(&base)])?;
    Ok(base)
}

/// Parses a belief base in the textual DSL.
pub fn parse_base(text: &str) -> Result<BeliefBase> {
    let mut p = Parser::new(text)?;
    let raw = p.statements()?;
    if !p.at_end() {
        return Err(p.error("expected statement", &["identifier", "`!`"]).into());
    }
    assign_labels(raw)
}

/// Parses a ground conjunction such as `!Ins(charlie) & Wor(diana)`.
pub fn parse_conjunction(text: &str) -> Result<Vec<Literal>> {
    let mut p = Parser::new(text)?;
    let lits = p.conjunction()?;
    if !p.at_end() {
        return Err(Error::Parse(
            p.error("expected end of input", &["`&`", "`.`"]),
        ));
    }
    Ok(lits)
}
