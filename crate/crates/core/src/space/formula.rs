//! Boolean formulas over `var=value` atoms.
//!
//! ```text
//! expr   := term ("or" term)*
//! term   := factor ("and" factor)*
//! factor := "not" factor | "(" expr ")" | IDENT "=" IDENT
//! ```
//!
//! `and` binds tighter than `or`. Identifiers consist of ASCII letters,
//! digits, `_`, `-` and `.`.

use std::sync::Arc;

use super::{Proposition, Space};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Atom {
        variable: String,
        value: String,
        position: usize,
    },
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Ident(String),
    Eq,
    LParen,
    RParen,
    Not,
    And,
    Or,
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.')
}

fn tokenize(src: &str) -> Result<Vec<(Token, usize)>> {
    let mut tokens = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '=' => {
                chars.next();
                tokens.push((Token::Eq, pos));
            }
            '(' => {
                chars.next();
                tokens.push((Token::LParen, pos));
            }
            ')' => {
                chars.next();
                tokens.push((Token::RParen, pos));
            }
            c if is_ident_char(c) => {
                let mut word = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if !is_ident_char(c) {
                        break;
                    }
                    word.push(c);
                    chars.next();
                }
                let token = match word.as_str() {
                    "not" => Token::Not,
                    "and" => Token::And,
                    "or" => Token::Or,
                    _ => Token::Ident(word),
                };
                tokens.push((token, pos));
            }
            other => {
                return Err(Error::Syntax {
                    position: pos,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn position(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |&(_, p)| p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            position: self.position(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Formula> {
        let mut lhs = self.term()?;
        while self.peek() == Some(&Token::Or) {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Formula::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Formula> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(&Token::And) {
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = Formula::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Formula> {
        match self.peek().cloned() {
            Some(Token::Not) => {
                self.pos += 1;
                Ok(Formula::Not(Box::new(self.factor()?)))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::RParen) {
                    return self.error("expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(Token::Ident(variable)) => {
                let position = self.position();
                self.pos += 1;
                if self.peek() != Some(&Token::Eq) {
                    return self.error("expected `=`");
                }
                self.pos += 1;
                match self.peek().cloned() {
                    Some(Token::Ident(value)) => {
                        self.pos += 1;
                        Ok(Formula::Atom {
                            variable,
                            value,
                            position,
                        })
                    }
                    _ => self.error("expected a value"),
                }
            }
            Some(_) => self.error("expected `not`, `(` or a variable"),
            None => self.error("unexpected end of formula"),
        }
    }
}

pub fn parse_formula(src: &str) -> Result<Formula> {
    let mut parser = Parser {
        tokens: tokenize(src)?,
        pos: 0,
        end: src.len(),
    };
    let formula = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return parser.error("unexpected trailing input");
    }
    Ok(formula)
}

impl Formula {
    pub fn eval(&self, space: &Arc<Space>) -> Result<Proposition> {
        match self {
            Formula::Atom {
                variable,
                value,
                position,
            } => Proposition::literal(space, variable, value).map_err(|e| match e {
                Error::UnknownVariable(v) => Error::Syntax {
                    position: *position,
                    message: format!("unknown variable `{v}`"),
                },
                Error::UnknownValue { variable, value } => Error::Syntax {
                    position: *position,
                    message: format!("unknown value `{value}` for variable `{variable}`"),
                },
                other => other,
            }),
            Formula::Not(inner) => Ok(inner.eval(space)?.complement()),
            Formula::And(a, b) => Ok(&a.eval(space)? & &b.eval(space)?),
            Formula::Or(a, b) => Ok(&a.eval(space)? | &b.eval(space)?),
        }
    }
}

/// Parses `src` and returns the set of worlds satisfying it.
pub fn eval_formula(space: &Arc<Space>, src: &str) -> Result<Proposition> {
    parse_formula(src)?.eval(space)
}
