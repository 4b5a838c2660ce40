//! Recursive-descent parser for `&`/`|` expressions over generators.
//!
//! ```text
//! expr   := term ('|' term)*
//! term   := factor ('&' factor)*
//! factor := ident | '(' expr ')'
//! ```
//!
//! Identifiers `P1`..`P9` name generators directly. Any other identifiers are
//! numbered in alphabetical order. The two styles cannot be mixed.

use std::collections::BTreeSet;

use super::MonotoneElement;
use crate::error::{Error, Result};

#[derive(Debug)]
enum Expr {
    Var(String),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Syntax {
            offset,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text.as_bytes().get(self.pos) {
            if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.as_bytes().get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while self.peek() == Some(b'|') {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Expr::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(b'&') {
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = Expr::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        match self.peek() {
            None => Err(self.error(self.pos, "unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(b')') => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    Some(_) => Err(self.error(self.pos, "expected `)`")),
                    None => Err(self.error(self.pos, "unclosed `(`")),
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                let bytes = self.text.as_bytes();
                while self.pos < bytes.len() && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_') {
                    self.pos += 1;
                }
                Ok(Expr::Var(self.text[start..self.pos].to_string()))
            }
            Some(c) if !c.is_ascii() => Err(self.error(self.pos, "non-ASCII character")),
            Some(c) => Err(self.error(self.pos, format!("unexpected `{}`", c as char))),
        }
    }
}

fn collect_vars<'e>(e: &'e Expr, out: &mut BTreeSet<&'e str>) {
    match e {
        Expr::Var(v) => {
            out.insert(v);
        }
        Expr::And(a, b) | Expr::Or(a, b) => {
            collect_vars(a, out);
            collect_vars(b, out);
        }
    }
}

/// `P1`..`P9` as a 0-based generator index.
fn generator_index(name: &str) -> Option<usize> {
    match name.as_bytes() {
        [b'P', d @ b'1'..=b'9'] => Some((d - b'1') as usize),
        _ => None,
    }
}

fn evaluate(e: &Expr, arity: usize, index: &dyn Fn(&str) -> usize) -> MonotoneElement {
    match e {
        Expr::Var(v) => MonotoneElement::variable(arity, index(v)),
        Expr::And(a, b) => evaluate(a, arity, index)
            .meet(&evaluate(b, arity, index))
            .expect("same arity"),
        Expr::Or(a, b) => evaluate(a, arity, index)
            .join(&evaluate(b, arity, index))
            .expect("same arity"),
    }
}

/// Parses an expression and returns its canonical clause form. `arity`
/// defaults to the largest generator used (or the number of distinct bare
/// identifiers).
pub fn parse_dnf(text: &str, arity: Option<usize>) -> Result<MonotoneElement> {
    let mut parser = Parser { text, pos: 0 };
    let ast = parser.expr()?;
    if let Some(c) = parser.peek() {
        return Err(parser.error(parser.pos, format!("unexpected `{}`", c as char)));
    }
    let mut vars = BTreeSet::new();
    collect_vars(&ast, &mut vars);
    let numbered: Vec<&str> = vars.iter().copied().filter(|v| generator_index(v).is_some()).collect();
    let bare: Vec<&str> = vars.iter().copied().filter(|v| generator_index(v).is_none()).collect();
    if !numbered.is_empty() && !bare.is_empty() {
        return Err(Error::UnknownVariable(bare[0].to_string()));
    }
    if bare.is_empty() {
        let needed = numbered.iter().filter_map(|v| generator_index(v)).max().unwrap_or(0) + 1;
        let arity = arity.unwrap_or(needed);
        if let Some(v) = numbered.iter().find(|v| generator_index(v).unwrap() >= arity) {
            return Err(Error::UnknownVariable(v.to_string()));
        }
        Ok(evaluate(&ast, arity, &|v| generator_index(v).expect("numbered")))
    } else {
        let arity = arity.unwrap_or(bare.len());
        if bare.len() > arity {
            return Err(Error::UnknownVariable(bare[arity].to_string()));
        }
        if arity > super::MAX_ARITY {
            return Err(Error::size("arity", super::MAX_ARITY));
        }
        Ok(evaluate(&ast, arity, &|v| bare.binary_search(&v).expect("collected")))
    }
}
