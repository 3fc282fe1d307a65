//! Multivariate polynomials over arbitrary-precision rationals.
//!
//! Terms are kept in a `BTreeMap` under graded lexicographic order, which
//! makes every polynomial a canonical form: equal polynomials are equal as
//! data structures and print identically.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num::{BigRational, One, Signed, Zero};

use crate::{Error, Result};

/// An interned symbol. The index refers to a [`SymbolTable`].
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct SymbolId(pub u32);

/// Immutable list of symbol names shared by all values of a computation.
///
/// Two tables are compatible when their name lists are equal; every
/// polynomial, coefficient and series carries an `Arc` to its table.
#[derive(Debug, PartialEq, Eq)]
pub struct SymbolTable {
    names: Vec<String>,
}

/// Symbols understood by the standard grammar, in canonical order.
pub const STANDARD_SYMBOLS: [&str; 8] = ["alpha", "beta", "s", "t", "r", "ap", "bp", "gp"];

impl SymbolTable {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Arc<SymbolTable> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, a) in names.iter().enumerate() {
            assert!(
                !names[..i].contains(a),
                "duplicate symbol name {a:?} in table"
            );
        }
        Arc::new(SymbolTable { names })
    }

    /// The eight-symbol table used by the CLI grammar.
    pub fn standard() -> Arc<SymbolTable> {
        SymbolTable::new(&STANDARD_SYMBOLS)
    }

    pub fn id(&self, name: &str) -> Option<SymbolId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| SymbolId(i as u32))
    }

    pub fn name(&self, id: SymbolId) -> &str {
        &self.names[id.0 as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn compatible(a: &Arc<SymbolTable>, b: &Arc<SymbolTable>) -> bool {
        Arc::ptr_eq(a, b) || a.names == b.names
    }
}

/// Exponent vector, one entry per table symbol. Ordered graded-lex:
/// total degree first, then lexicographic on the exponents.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Monomial(pub(crate) Vec<u32>);

impl Monomial {
    fn unit(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    fn symbol(n: usize, id: SymbolId) -> Monomial {
        let mut m = Monomial::unit(n);
        m.0[id.0 as usize] = 1;
        m
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("monomial degree overflow"))
                .collect(),
        )
    }

    /// Componentwise quotient, `None` if `other` does not divide `self`.
    pub(crate) fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial with `BigRational` coefficients.
///
/// The term map never stores zero coefficients, so `terms.is_empty()`
/// is the zero test and structural equality is semantic equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    pub table: Arc<SymbolTable>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(table: &Arc<SymbolTable>) -> Polynomial {
        Polynomial {
            table: Arc::clone(table),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(table: &Arc<SymbolTable>, value: BigRational) -> Polynomial {
        let mut p = Polynomial::zero(table);
        if !value.is_zero() {
            p.terms.insert(Monomial::unit(table.len()), value);
        }
        p
    }

    pub fn one(table: &Arc<SymbolTable>) -> Polynomial {
        Polynomial::constant(table, BigRational::one())
    }

    pub fn from_integer(table: &Arc<SymbolTable>, n: i64) -> Polynomial {
        Polynomial::constant(table, BigRational::from_integer(n.into()))
    }

    pub fn symbol(table: &Arc<SymbolTable>, id: SymbolId) -> Polynomial {
        assert!((id.0 as usize) < table.len(), "symbol out of table range");
        let mut p = Polynomial::zero(table);
        p.terms
            .insert(Monomial::symbol(table.len(), id), BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_unit())
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().map(|v| v.is_one()).unwrap_or(false)
    }

    /// The value of a constant polynomial, `None` if any symbol occurs.
    pub fn constant_value(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().unwrap().clone())
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Degree in one symbol (0 for the zero polynomial).
    pub fn degree_in(&self, id: SymbolId) -> u32 {
        self.terms
            .keys()
            .map(|m| m.0[id.0 as usize])
            .max()
            .unwrap_or(0)
    }

    /// True when the symbol occurs in some term.
    pub fn contains(&self, id: SymbolId) -> bool {
        self.degree_in(id) > 0
    }

    /// Highest-index symbol occurring anywhere, if any.
    pub fn top_symbol(&self) -> Option<SymbolId> {
        let mut top: Option<u32> = None;
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate().rev() {
                if e > 0 {
                    top = Some(top.map_or(i as u32, |t| t.max(i as u32)));
                    break;
                }
            }
        }
        top.map(SymbolId)
    }

    /// Leading term under graded-lex.
    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn assert_same_table(&self, other: &Polynomial) {
        assert!(
            SymbolTable::compatible(&self.table, &other.table),
            "polynomial symbol tables differ"
        );
    }

    pub fn scale(&self, k: &BigRational) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero(&self.table);
        }
        Polynomial {
            table: Arc::clone(&self.table),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * k))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.table);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Monic normalization: divide by the graded-lex leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = BigRational::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    /// Evaluate with every symbol bound to a rational.
    pub fn substitute(&self, bind: &BTreeMap<SymbolId, BigRational>) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = bind.get(&SymbolId(i as u32)).ok_or_else(|| {
                    Error::Validation(format!(
                        "symbol {} is unbound in substitution",
                        self.table.name(SymbolId(i as u32))
                    ))
                })?;
                for _ in 0..e {
                    term *= v;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Replace one symbol by a polynomial over the same table.
    pub fn substitute_symbol(&self, id: SymbolId, value: &Polynomial) -> Polynomial {
        self.assert_same_table(value);
        let idx = id.0 as usize;
        let mut acc = Polynomial::zero(&self.table);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            let mut rest = m.clone();
            rest.0[idx] = 0;
            let mut term = Polynomial::zero(&self.table);
            term.add_term(rest, c.clone());
            for _ in 0..e {
                term = &term * value;
            }
            acc = &acc + &term;
        }
        acc
    }

    /// View as univariate in `v`: dense coefficient list, index = power of `v`.
    pub(crate) fn coeffs_in(&self, v: SymbolId) -> Vec<Polynomial> {
        let idx = v.0 as usize;
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Polynomial::zero(&self.table); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[idx] as usize;
            let mut rest = m.clone();
            rest.0[idx] = 0;
            out[e].add_term(rest, c.clone());
        }
        out
    }

    /// Rebuild from a univariate view in `v`.
    pub(crate) fn from_coeffs_in(
        table: &Arc<SymbolTable>,
        v: SymbolId,
        coeffs: &[Polynomial],
    ) -> Polynomial {
        let idx = v.0 as usize;
        let mut acc = Polynomial::zero(table);
        for (e, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut m2 = m.clone();
                m2.0[idx] = m2.0[idx]
                    .checked_add(e as u32)
                    .expect("monomial degree overflow");
                acc.add_term(m2, c.clone());
            }
        }
        acc
    }

    pub(crate) fn iter_terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_table(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_table(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            table: Arc::clone(&self.table),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_table(rhs);
        let mut out = Polynomial::zero(&self.table);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

fn fmt_rational(q: &BigRational) -> String {
    q.to_string()
}

impl fmt::Display for Polynomial {
    /// Canonical text: terms in descending graded-lex order, explicit `*`
    /// between factors, `^` for powers. Round-trips through the parser.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.is_unit() {
                factors.push(fmt_rational(&mag));
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = self.table.name(SymbolId(i as u32));
                if e == 1 {
                    factors.push(name.to_string());
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Arc<SymbolTable> {
        SymbolTable::standard()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn ring_basics() {
        let t = table();
        let a = Polynomial::symbol(&t, t.id("alpha").unwrap());
        let b = Polynomial::symbol(&t, t.id("beta").unwrap());
        let one = Polynomial::one(&t);
        let p = &(&a + &b) * &(&a - &b);
        let expect = &(&a * &a) - &(&b * &b);
        assert_eq!(p, expect);
        assert_eq!(&p - &p, Polynomial::zero(&t));
        assert_eq!(&p * &one, p);
    }

    #[test]
    fn graded_lex_display() {
        let t = table();
        let a = Polynomial::symbol(&t, t.id("alpha").unwrap());
        let b = Polynomial::symbol(&t, t.id("beta").unwrap());
        // alpha^2 + alpha*beta + beta - 3
        let p = &(&(&a * &a) + &(&a * &b)) + &(&b + &Polynomial::from_integer(&t, -3));
        assert_eq!(p.to_string(), "alpha^2 + alpha*beta + beta - 3");
        let m = p.scale(&q(-1, 6));
        assert_eq!(
            m.to_string(),
            "-1/6*alpha^2 - 1/6*alpha*beta - 1/6*beta + 1/2"
        );
    }

    #[test]
    fn substitution() {
        let t = table();
        let s = t.id("s").unwrap();
        let a = Polynomial::symbol(&t, s);
        let p = &(&a * &a) + &Polynomial::one(&t); // s^2 + 1
        let mut bind = BTreeMap::new();
        bind.insert(s, q(3, 2));
        assert_eq!(p.substitute(&bind).unwrap(), q(13, 4));

        // s -> alpha - beta
        let alpha = Polynomial::symbol(&t, t.id("alpha").unwrap());
        let beta = Polynomial::symbol(&t, t.id("beta").unwrap());
        let sub = p.substitute_symbol(s, &(&alpha - &beta));
        assert_eq!(sub.to_string(), "alpha^2 - 2*alpha*beta + beta^2 + 1");
    }

    #[test]
    fn univariate_views_round_trip() {
        let t = table();
        let s = t.id("s").unwrap();
        let tt = t.id("t").unwrap();
        let ps = Polynomial::symbol(&t, s);
        let pt = Polynomial::symbol(&t, tt);
        let p = &(&(&ps * &ps) * &pt) + &(&pt + &Polynomial::one(&t));
        let cs = p.coeffs_in(s);
        assert_eq!(cs.len(), 3);
        assert_eq!(Polynomial::from_coeffs_in(&t, s, &cs), p);
    }
}
