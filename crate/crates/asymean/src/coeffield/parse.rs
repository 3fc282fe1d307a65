//! Text grammar for coefficient literals.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' uint)?
//! atom   := integer | symbol | '(' expr ')'
//! ```
//!
//! `^` binds tighter than unary minus, so `-r^2` is `-(r^2)`. Division is
//! field division over rational functions; `3/4*alpha` is `(3/4)·alpha`.
//! The canonical `Display` forms of [`Polynomial`] and [`Coefficient`]
//! parse back to equal values.

use std::sync::Arc;

use num::{BigInt, BigRational};

use super::coefficient::Coefficient;
use super::poly::SymbolTable;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Sym(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let mut chars = input.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '+' => {
                chars.next();
                toks.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                toks.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                toks.push(Tok::Star);
            }
            '/' => {
                chars.next();
                toks.push(Tok::Slash);
            }
            '^' => {
                chars.next();
                toks.push(Tok::Caret);
            }
            '(' => {
                chars.next();
                toks.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                toks.push(Tok::RParen);
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Int(s.parse::<BigInt>().unwrap()));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut s = String::new();
                while let Some(&(_, d)) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Sym(s));
            }
            _ => {
                return Err(Error::Parse(format!(
                    "unexpected character {c:?} at byte {i}"
                )))
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    table: &'a Arc<SymbolTable>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Coefficient> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Coefficient> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.next();
                    acc = &acc * &self.unary()?;
                }
                Some(Tok::Slash) => {
                    self.next();
                    let rhs = self.unary()?;
                    acc = acc
                        .checked_div(&rhs)
                        .map_err(|_| Error::Parse("division by zero in literal".into()))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Coefficient> {
        if let Some(Tok::Minus) = self.peek() {
            self.next();
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Coefficient> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.next();
            match self.next() {
                Some(Tok::Int(n)) => {
                    let e: i64 = n
                        .try_into()
                        .map_err(|_| Error::Parse("exponent out of range".into()))?;
                    return base
                        .pow(e)
                        .map_err(|_| Error::Parse("power of zero coefficient".into()));
                }
                other => {
                    return Err(Error::Parse(format!(
                        "expected integer exponent after '^', found {other:?}"
                    )))
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Coefficient> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(Coefficient::from_rational(
                self.table,
                BigRational::from_integer(n),
            )),
            Some(Tok::Sym(name)) => {
                let id = self.table.id(&name).ok_or_else(|| {
                    Error::Parse(format!("unknown symbol {name:?} in coefficient literal"))
                })?;
                Ok(Coefficient::symbol(self.table, id))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::Parse("unbalanced parenthesis".into())),
                }
            }
            other => Err(Error::Parse(format!(
                "expected integer, symbol or '(', found {other:?}"
            ))),
        }
    }
}

/// Parse a coefficient literal over the given symbol table.
pub fn parse_coefficient(input: &str, table: &Arc<SymbolTable>) -> Result<Coefficient> {
    let toks = tokenize(input)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty coefficient literal".into()));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        table,
    };
    let c = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!(
            "trailing tokens after coefficient literal: {:?}",
            &p.toks[p.pos..]
        )));
    }
    Ok(c)
}

/// Parse a plain rational: `3`, `-7/2`, `+1/6`.
pub fn parse_rational(input: &str) -> Result<BigRational> {
    let s = input.trim();
    let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
    let (sign, rest) = match s.strip_prefix('-') {
        Some(r) => (-1, r),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let mut parts = rest.splitn(2, '/');
    let num: BigInt = parts
        .next()
        .filter(|p| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit()))
        .ok_or_else(bad)?
        .parse()
        .map_err(|_| bad())?;
    let den: BigInt = match parts.next() {
        None => BigInt::from(1),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
    };
    if den == BigInt::from(0) {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num * sign, den))
}
