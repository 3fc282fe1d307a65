//! Rational functions `num/den` over [`Polynomial`], kept in canonical
//! reduced form: GCD removed, denominator monic and nonzero. Purely
//! numeric values always have denominator exactly 1.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num::{BigRational, One, Zero};

use super::gcd::{div_exact, poly_gcd};
use super::poly::{Polynomial, SymbolId, SymbolTable};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Coefficient {
    num: Polynomial,
    den: Polynomial,
}

impl Coefficient {
    /// Build `num/den`, reducing to canonical form.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Coefficient> {
        if den.is_zero() {
            return Err(Error::Validation("zero denominator".into()));
        }
        Ok(Coefficient { num, den }.reduced())
    }

    fn reduced(self) -> Coefficient {
        let Coefficient { num, den } = self;
        if num.is_zero() {
            return Coefficient {
                den: Polynomial::one(&num.table),
                num,
            };
        }
        let (mut num, mut den) = if den.is_constant() {
            (num, den)
        } else {
            let g = poly_gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    div_exact(&num, &g).expect("gcd divides numerator"),
                    div_exact(&den, &g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = BigRational::one() / lc;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Coefficient { num, den }
    }

    pub fn from_poly(p: Polynomial) -> Coefficient {
        let den = Polynomial::one(&p.table);
        Coefficient { num: p, den }
    }

    pub fn from_rational(table: &Arc<SymbolTable>, q: BigRational) -> Coefficient {
        Coefficient::from_poly(Polynomial::constant(table, q))
    }

    pub fn from_integer(table: &Arc<SymbolTable>, n: i64) -> Coefficient {
        Coefficient::from_poly(Polynomial::from_integer(table, n))
    }

    pub fn symbol(table: &Arc<SymbolTable>, id: SymbolId) -> Coefficient {
        Coefficient::from_poly(Polynomial::symbol(table, id))
    }

    pub fn zero(table: &Arc<SymbolTable>) -> Coefficient {
        Coefficient::from_poly(Polynomial::zero(table))
    }

    pub fn one(table: &Arc<SymbolTable>) -> Coefficient {
        Coefficient::from_poly(Polynomial::one(table))
    }

    pub fn table(&self) -> &Arc<SymbolTable> {
        &self.num.table
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some(q)` when the value is a plain rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    /// True when the reduced denominator is constant (value is polynomial).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn contains(&self, id: SymbolId) -> bool {
        self.num.contains(id) || self.den.contains(id)
    }

    pub fn checked_div(&self, rhs: &Coefficient) -> Result<Coefficient> {
        if rhs.is_zero() {
            return Err(Error::Validation("division by zero coefficient".into()));
        }
        Coefficient::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn inverse(&self) -> Result<Coefficient> {
        Coefficient::one(self.table()).checked_div(self)
    }

    /// Integer power; negative exponents invert (zero base is an error).
    pub fn pow(&self, e: i64) -> Result<Coefficient> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        let mut acc = Coefficient::one(self.table());
        for _ in 0..e {
            acc = &acc * self;
        }
        Ok(acc)
    }

    pub fn scale(&self, q: &BigRational) -> Coefficient {
        Coefficient {
            num: self.num.scale(q),
            den: self.den.clone(),
        }
        .reduced()
    }

    /// Evaluate with every occurring symbol bound to a rational.
    pub fn substitute(&self, bind: &BTreeMap<SymbolId, BigRational>) -> Result<BigRational> {
        let n = self.num.substitute(bind)?;
        let d = self.den.substitute(bind)?;
        if d.is_zero() {
            return Err(Error::Validation(
                "denominator vanishes under substitution".into(),
            ));
        }
        Ok(n / d)
    }

    /// Replace a symbol by a polynomial (used for display transforms).
    pub fn substitute_symbol(&self, id: SymbolId, value: &Polynomial) -> Coefficient {
        Coefficient {
            num: self.num.substitute_symbol(id, value),
            den: self.den.substitute_symbol(id, value),
        }
        .reduced()
    }
}

impl Add for &Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        Coefficient { num, den }.reduced()
    }
}

impl Sub for &Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        Coefficient { num, den }.reduced()
    }
}

impl Mul for &Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        Coefficient {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
        .reduced()
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

/// Panicking division for internal use where the divisor is known nonzero.
impl Div for &Coefficient {
    type Output = Coefficient;
    fn div(self, rhs: &Coefficient) -> Coefficient {
        self.checked_div(rhs).expect("division by zero coefficient")
    }
}

impl fmt::Display for Coefficient {
    /// Canonical text, parseable by the coefficient grammar: a polynomial,
    /// or `(num)/(den)` when the denominator is nontrivial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// Binomial coefficient with an arbitrary coefficient on top:
/// `u(u-1)…(u-k+1)/k!`.
pub fn binom(u: &Coefficient, k: u64) -> Coefficient {
    let table = u.table();
    let mut num = Coefficient::one(table);
    let mut fact = BigRational::one();
    for i in 0..k {
        let shift = Coefficient::from_rational(
            table,
            BigRational::from_integer(num::BigInt::from(i)),
        );
        num = &num * &(u - &shift);
        fact *= BigRational::from_integer(num::BigInt::from(i + 1));
    }
    num.scale(&(BigRational::one() / fact))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Arc<SymbolTable> {
        SymbolTable::standard()
    }

    fn sym(t: &Arc<SymbolTable>, n: &str) -> Coefficient {
        Coefficient::symbol(t, t.id(n).unwrap())
    }

    #[test]
    fn reduction_is_canonical() {
        let t = table();
        let r = sym(&t, "r");
        let one = Coefficient::one(&t);
        // (r^2 - 1)/(r - 1) reduces to r + 1
        let p = &(&r * &r) - &one;
        let q = &r - &one;
        let c = p.checked_div(&q).unwrap();
        assert_eq!(c, &r + &one);
        assert!(c.is_polynomial());
    }

    #[test]
    fn denominator_monic() {
        let t = table();
        let r = sym(&t, "r");
        let two = Coefficient::from_integer(&t, 2);
        // 1/(2r + 2) -> (1/2)/(r + 1)
        let c = Coefficient::one(&t)
            .checked_div(&(&(&two * &r) + &two))
            .unwrap();
        assert_eq!(c.denominator().to_string(), "r + 1");
        assert_eq!(c.numerator().to_string(), "1/2");
        assert_eq!(c.to_string(), "(1/2)/(r + 1)");
    }

    #[test]
    fn field_identities() {
        let t = table();
        let a = &sym(&t, "s") + &Coefficient::from_integer(&t, 3);
        let b = &sym(&t, "t") - &Coefficient::from_integer(&t, 1);
        let prod = &a * &b;
        assert_eq!(prod.checked_div(&b).unwrap(), a);
        assert_eq!(&(&a - &a) + &b, b);
        assert!(a.pow(0).unwrap().is_one());
        assert_eq!(a.pow(-1).unwrap().checked_div(&a.pow(-2).unwrap()).unwrap(), a);
    }

    #[test]
    fn zero_denominator_rejected() {
        let t = table();
        let z = Coefficient::zero(&t);
        assert!(Coefficient::one(&t).checked_div(&z).is_err());
        assert!(Coefficient::new(Polynomial::one(&t), Polynomial::zero(&t)).is_err());
    }

    #[test]
    fn rational_detection() {
        let t = table();
        let half = Coefficient::from_rational(&t, BigRational::new(1.into(), 2.into()));
        assert_eq!(half.as_rational().unwrap(), BigRational::new(1.into(), 2.into()));
        assert!(sym(&t, "alpha").as_rational().is_none());
    }

    #[test]
    fn binom_matches_integers() {
        let t = table();
        let five = Coefficient::from_integer(&t, 5);
        assert_eq!(binom(&five, 2).as_rational().unwrap(), BigRational::from_integer(10.into()));
        // binom(-1, j) = (-1)^j
        let m1 = Coefficient::from_integer(&t, -1);
        assert_eq!(binom(&m1, 3).as_rational().unwrap(), BigRational::from_integer((-1).into()));
        assert_eq!(binom(&m1, 4).as_rational().unwrap(), BigRational::from_integer(1.into()));
        // binom(u, 2) = u(u-1)/2 keeps the symbol
        let u = sym(&t, "r");
        let b2 = binom(&u, 2);
        assert_eq!(b2.to_string(), "1/2*r^2 - 1/2*r");
    }
}
