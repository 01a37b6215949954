//! Parser for the concrete formula syntax.
//!
//! Grammar, loosest to tightest: `<->`, `->` (right-associative), `\/`, `/\`,
//! `==`, `~`. Unparenthesized `==` chains are rejected. `!` is accepted as an
//! alias for `~`. Atoms match `[a-z][a-zA-Z0-9_]*`. Whitespace is insignificant.
//!
//! Derived connectives are desugared while parsing:
//! `a /\ b` becomes `~(a -> ~b)`, `a \/ b` becomes `~a -> b`, and `a <-> b`
//! becomes `(a -> b) /\ (b -> a)`.

use crate::formula::Formula;
use thiserror::Error;

/// Parse failure with the character offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Atom(String),
    Not,
    And,
    Or,
    Arrow,
    Iff,
    Eq,
    LParen,
    RParen,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Atom(name) => format!("atom `{name}`"),
            Token::Not => "`~`".into(),
            Token::And => "`/\\`".into(),
            Token::Or => "`\\/`".into(),
            Token::Arrow => "`->`".into(),
            Token::Iff => "`<->`".into(),
            Token::Eq => "`==`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        match c {
            _ if c.is_whitespace() => {
                i += 1;
            }
            '(' => {
                tokens.push((start, Token::LParen));
                i += 1;
            }
            ')' => {
                tokens.push((start, Token::RParen));
                i += 1;
            }
            '~' | '!' => {
                tokens.push((start, Token::Not));
                i += 1;
            }
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    tokens.push((start, Token::Arrow));
                    i += 2;
                } else {
                    return Err(ParseError::new(start, "expected `->` after `-`"));
                }
            }
            '=' => {
                if chars.get(i + 1) == Some(&'=') {
                    tokens.push((start, Token::Eq));
                    i += 2;
                } else {
                    return Err(ParseError::new(start, "expected `==` after `=`"));
                }
            }
            '<' => {
                if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') {
                    tokens.push((start, Token::Iff));
                    i += 3;
                } else {
                    return Err(ParseError::new(start, "expected `<->` after `<`"));
                }
            }
            '/' => {
                if chars.get(i + 1) == Some(&'\\') {
                    tokens.push((start, Token::And));
                    i += 2;
                } else {
                    return Err(ParseError::new(start, "expected `/\\` after `/`"));
                }
            }
            '\\' => {
                if chars.get(i + 1) == Some(&'/') {
                    tokens.push((start, Token::Or));
                    i += 2;
                } else {
                    return Err(ParseError::new(start, "expected `\\/` after `\\`"));
                }
            }
            'a'..='z' => {
                let mut name = String::new();
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    name.push(chars[i]);
                    i += 1;
                }
                tokens.push((start, Token::Atom(name)));
            }
            _ => {
                return Err(ParseError::new(
                    start,
                    format!("unexpected character `{c}`"),
                ));
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    input_len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(o, _)| *o)
            .unwrap_or(self.input_len)
    }

    fn bump(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn expect(&mut self, want: &Token) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(ParseError::new(
                self.offset(),
                format!("expected {}, found {}", want.describe(), t.describe()),
            )),
            None => Err(ParseError::new(
                self.offset(),
                format!("expected {}, found end of input", want.describe()),
            )),
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.imp()?;
        if self.peek() == Some(&Token::Iff) {
            self.pos += 1;
            let rhs = self.iff()?;
            // a <-> b  ==>  (a -> b) /\ (b -> a)
            let fwd = Formula::implies(lhs.clone(), rhs.clone());
            let back = Formula::implies(rhs, lhs);
            return Ok(desugar_and(fwd, back));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.peek() == Some(&Token::Arrow) {
            self.pos += 1;
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.and()?;
        if self.peek() == Some(&Token::Or) {
            self.pos += 1;
            let rhs = self.or()?;
            // a \/ b  ==>  ~a -> b
            return Ok(Formula::implies(Formula::neg(lhs), rhs));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.eq()?;
        if self.peek() == Some(&Token::And) {
            self.pos += 1;
            let rhs = self.and()?;
            return Ok(desugar_and(lhs, rhs));
        }
        Ok(lhs)
    }

    fn eq(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        if self.peek() == Some(&Token::Eq) {
            self.pos += 1;
            let rhs = self.unary()?;
            if self.peek() == Some(&Token::Eq) {
                return Err(ParseError::new(
                    self.offset(),
                    "chained `==` needs parentheses",
                ));
            }
            return Ok(Formula::ident(lhs, rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let offset = self.offset();
        match self.bump() {
            Some(Token::Not) => Ok(Formula::neg(self.unary()?)),
            Some(Token::Atom(name)) => Ok(Formula::Atom(name)),
            Some(Token::LParen) => {
                let inner = self.iff()?;
                self.expect(&Token::RParen)?;
                Ok(inner)
            }
            Some(t) => Err(ParseError::new(
                offset,
                format!("expected a formula, found {}", t.describe()),
            )),
            None => Err(ParseError::new(offset, "expected a formula, found end of input")),
        }
    }
}

// a /\ b  ==>  ~(a -> ~b)
fn desugar_and(a: Formula, b: Formula) -> Formula {
    Formula::neg(Formula::implies(a, Formula::neg(b)))
}

/// Parses the concrete syntax into a desugared formula.
pub fn parse(input: &str) -> Result<Formula, ParseError> {
    let tokens = lex(input)?;
    if tokens.is_empty() {
        return Err(ParseError::new(0, "empty input"));
    }
    let mut parser = Parser {
        tokens,
        pos: 0,
        input_len: input.chars().count(),
    };
    let formula = parser.iff()?;
    if let Some(t) = parser.peek() {
        return Err(ParseError::new(
            parser.offset(),
            format!("unexpected {} after formula", t.describe()),
        ));
    }
    Ok(formula)
}
