use std::fmt;

use super::{ParseError, SourceSpan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    Ident(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Bang,
    Amp,
    Arrow,
    Dot,
}

impl Token {
    pub fn class(&self) -> &'static str {
        match self {
            Token::Ident(_) => "identifier",
            Token::LParen => "`(`",
            Token::RParen => "`)`",
            Token::LBracket => "`[`",
            Token::RBracket => "`]`",
            Token::Comma => "`,`",
            Token::Colon => "`:`",
            Token::Bang => "`!`",
            Token::Amp => "`&`",
            Token::Arrow => "`->`",
            Token::Dot => "`.`",
        }
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(s) => write!(f, "`{s}`"),
            t => f.write_str(t.class()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Spanned {
    pub token: Token,
    pub span: SourceSpan,
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }
}

pub fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut cur = Cursor {
        chars: text.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut out = Vec::new();
    while let Some(c) = cur.peek() {
        let (line, column) = (cur.line, cur.column);
        let span = |len| SourceSpan::new(line, column, len);
        let single = match c {
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            '[' => Some(Token::LBracket),
            ']' => Some(Token::RBracket),
            ',' => Some(Token::Comma),
            ':' => Some(Token::Colon),
            '!' => Some(Token::Bang),
            '&' => Some(Token::Amp),
            '.' => Some(Token::Dot),
            _ => None,
        };
        if let Some(token) = single {
            cur.bump();
            out.push(Spanned {
                token,
                span: span(1),
            });
            continue;
        }
        if c.is_whitespace() {
            cur.bump();
        } else if c == '/' {
            cur.bump();
            if cur.peek() != Some('/') {
                return Err(ParseError::new(
                    span(1),
                    "unexpected `/`",
                    vec!["`//`".into()],
                ));
            }
            while let Some(c) = cur.peek() {
                if c == '\n' {
                    break;
                }
                cur.bump();
            }
        } else if c == '-' {
            cur.bump();
            if cur.peek() != Some('>') {
                return Err(ParseError::new(
                    span(1),
                    "unexpected `-`",
                    vec!["`->`".into()],
                ));
            }
            cur.bump();
            out.push(Spanned {
                token: Token::Arrow,
                span: span(2),
            });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut ident = String::new();
            while let Some(c) = cur.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    ident.push(c);
                    cur.bump();
                } else {
                    break;
                }
            }
            let len = ident.len();
            out.push(Spanned {
                token: Token::Ident(ident),
                span: span(len),
            });
        } else {
            return Err(ParseError::new(
                span(1),
                format!("unexpected character `{c}`"),
                vec!["identifier".into(), "punctuation".into()],
            ));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans_track_lines_and_columns() {
        let toks = tokenize("Wor(X) // note\n  -> Ins(X).").unwrap();
        let arrow = toks.iter().find(|t| t.token == Token::Arrow).unwrap();
        assert_eq!(arrow.span, SourceSpan::new(2, 3, 2));
        assert_eq!(toks.last().unwrap().token, Token::Dot);
    }

    #[test]
    fn stray_character_is_reported() {
        let err = tokenize("Wor(a) ? b").unwrap_err();
        assert_eq!(err.span, SourceSpan::new(1, 8, 1));
    }
}
