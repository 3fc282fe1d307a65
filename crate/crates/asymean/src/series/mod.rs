//! Truncated asymptotic series with exact coefficients.
//!
//! A series represents `b·log x + x^e (a₀ + a₁x⁻¹ + … + a_N x⁻ᴺ)` where
//! the coefficients live in the rational-function field of a symbol table
//! and the leading exponent `e` is a linear form `q·S + c` in at most one
//! symbol. The `exact` flag records whether the listed coefficients are
//! the complete function (a finite sum) rather than a truncation; exact
//! series may be zero-padded to any order without losing information.
//!
//! Truncation-order bookkeeping follows one rule: a result coefficient is
//! kept only when no discarded coefficient of an inexact operand could
//! have contributed to it.

mod json;
mod latex;
mod text;
mod transforms;

pub use json::{from_json_str, to_json_string};
pub use latex::to_latex;
pub(crate) use transforms::leading_power;
pub use transforms::{log_series, pow_series, LogTable, PowTable};

use std::fmt;
use std::sync::Arc;

use num::{BigRational, One, Signed, Zero};

use crate::coeffield::{Coefficient, SymbolId, SymbolTable};
use crate::{Error, Result};

/// Leading exponent: `scale·symbol + offset`, or a plain rational.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Exponent {
    sym: Option<(SymbolId, BigRational)>,
    offset: BigRational,
}

impl Exponent {
    pub fn rational(q: BigRational) -> Exponent {
        Exponent {
            sym: None,
            offset: q,
        }
    }

    pub fn from_integer(n: i64) -> Exponent {
        Exponent::rational(BigRational::from_integer(n.into()))
    }

    pub fn linear(sym: SymbolId, scale: BigRational, offset: BigRational) -> Exponent {
        if scale.is_zero() {
            Exponent::rational(offset)
        } else {
            Exponent {
                sym: Some((sym, scale)),
                offset,
            }
        }
    }

    pub fn symbol(sym: SymbolId) -> Exponent {
        Exponent::linear(sym, BigRational::one(), BigRational::zero())
    }

    /// Extract a linear form from a coefficient; errors on anything of
    /// higher degree, with a denominator, or in more than one symbol.
    pub fn from_coefficient(c: &Coefficient) -> Result<Exponent> {
        if !c.is_polynomial() {
            return Err(Error::Validation(
                "exponent must be a linear form, not a quotient".into(),
            ));
        }
        let p = c.numerator();
        if p.total_degree() > 1 {
            return Err(Error::Validation(
                "exponent must be linear in at most one symbol".into(),
            ));
        }
        let mut sym: Option<(SymbolId, BigRational)> = None;
        let mut offset = BigRational::zero();
        for (m, coef) in p.iter_terms() {
            if m.degree() == 0 {
                offset = coef.clone();
            } else {
                let idx = (0..c.table().len())
                    .find(|&i| m.0[i] > 0)
                    .expect("degree-1 monomial has a symbol");
                if sym.is_some() {
                    return Err(Error::Validation(
                        "exponent must involve at most one symbol".into(),
                    ));
                }
                sym = Some((SymbolId(idx as u32), coef.clone()));
            }
        }
        Ok(Exponent { sym, offset })
    }

    pub fn to_coefficient(&self, table: &Arc<SymbolTable>) -> Coefficient {
        let mut c = Coefficient::from_rational(table, self.offset.clone());
        if let Some((id, scale)) = &self.sym {
            c = &c + &Coefficient::symbol(table, *id).scale(scale);
        }
        c
    }

    pub fn is_rational(&self) -> bool {
        self.sym.is_none()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.sym.is_none() {
            Some(&self.offset)
        } else {
            None
        }
    }

    pub fn symbol_part(&self) -> Option<&(SymbolId, BigRational)> {
        self.sym.as_ref()
    }

    pub fn offset(&self) -> &BigRational {
        &self.offset
    }

    pub fn add_rational(&self, q: &BigRational) -> Exponent {
        Exponent {
            sym: self.sym.clone(),
            offset: &self.offset + q,
        }
    }

    pub fn mul_rational(&self, q: &BigRational) -> Exponent {
        if q.is_zero() {
            return Exponent::rational(BigRational::zero());
        }
        Exponent {
            sym: self.sym.as_ref().map(|(id, s)| (*id, s * q)),
            offset: &self.offset * q,
        }
    }

    /// `self + other` when representable (at most one symbol survives).
    pub fn checked_add(&self, other: &Exponent) -> Option<Exponent> {
        match (&self.sym, &other.sym) {
            (None, _) => Some(Exponent {
                sym: other.sym.clone(),
                offset: &self.offset + &other.offset,
            }),
            (_, None) => Some(Exponent {
                sym: self.sym.clone(),
                offset: &self.offset + &other.offset,
            }),
            (Some((a, sa)), Some((b, sb))) => {
                if a != b {
                    return None;
                }
                let s = sa + sb;
                let out = Exponent {
                    sym: if s.is_zero() { None } else { Some((*a, s)) },
                    offset: &self.offset + &other.offset,
                };
                Some(out)
            }
        }
    }

    /// Rational difference `self - other`; `None` when the symbolic parts
    /// differ (the exponents live on unrelated grids).
    pub fn rational_diff(&self, other: &Exponent) -> Option<BigRational> {
        match (&self.sym, &other.sym) {
            (None, None) => Some(&self.offset - &other.offset),
            (Some((a, sa)), Some((b, sb))) if a == b && sa == sb => {
                Some(&self.offset - &other.offset)
            }
            _ => None,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Linear forms print like polynomials would: "2*gp - 1/2".
        match &self.sym {
            None => write!(f, "{}", self.offset),
            Some((id, scale)) => {
                // Render through a throwaway table-free path is impossible;
                // exponents always display via their owning series instead.
                write!(f, "<{:?}*sym{} + {}>", scale, id.0, self.offset)
            }
        }
    }
}

/// `b·log x + x^e Σ aₙ x⁻ⁿ` with exact coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AsymptoticSeries {
    table: Arc<SymbolTable>,
    log_coeff: Coefficient,
    exponent: Exponent,
    coeffs: Vec<Coefficient>,
    exact: bool,
}

impl AsymptoticSeries {
    /// Build and normalize. Leading zero coefficients are folded into the
    /// exponent so `a₀ ≠ 0` unless the tail is identically zero.
    pub fn new(
        table: &Arc<SymbolTable>,
        log_coeff: Coefficient,
        exponent: Exponent,
        coeffs: Vec<Coefficient>,
        exact: bool,
    ) -> AsymptoticSeries {
        assert!(!coeffs.is_empty(), "series needs at least one coefficient");
        assert!(
            SymbolTable::compatible(table, log_coeff.table()),
            "log coefficient belongs to a different symbol table"
        );
        for c in &coeffs {
            assert!(
                SymbolTable::compatible(table, c.table()),
                "coefficient belongs to a different symbol table"
            );
        }
        let mut s = AsymptoticSeries {
            table: Arc::clone(table),
            log_coeff,
            exponent,
            coeffs,
            exact,
        };
        s.normalize();
        s
    }

    /// Pure power series `x^e Σ aₙ x⁻ⁿ`.
    pub fn from_coeffs(
        table: &Arc<SymbolTable>,
        exponent: Exponent,
        coeffs: Vec<Coefficient>,
        exact: bool,
    ) -> AsymptoticSeries {
        let zero = Coefficient::zero(table);
        AsymptoticSeries::new(table, zero, exponent, coeffs, exact)
    }

    /// The constant series `1` (exact).
    pub fn one(table: &Arc<SymbolTable>) -> AsymptoticSeries {
        AsymptoticSeries::from_coeffs(
            table,
            Exponent::from_integer(0),
            vec![Coefficient::one(table)],
            true,
        )
    }

    fn normalize(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs[0].is_zero() {
            self.coeffs.remove(0);
            self.exponent = self.exponent.add_rational(&-BigRational::one());
        }
        if self.coeffs.len() == 1 && self.coeffs[0].is_zero() && self.log_coeff.is_zero() {
            self.exponent = Exponent::from_integer(0);
        }
    }

    pub fn table(&self) -> &Arc<SymbolTable> {
        &self.table
    }

    pub fn log_coeff(&self) -> &Coefficient {
        &self.log_coeff
    }

    pub fn exponent(&self) -> &Exponent {
        &self.exponent
    }

    pub fn coeffs(&self) -> &[Coefficient] {
        &self.coeffs
    }

    pub fn exact(&self) -> bool {
        self.exact
    }

    /// Highest trusted index: coefficients exist for `a₀ … a_order`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.log_coeff.is_zero() && self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Coefficient `aₙ`, zero-padding beyond the listed order for exact
    /// series. `None` when `n` exceeds the trusted range of a truncation.
    pub fn coeff(&self, n: usize) -> Option<Coefficient> {
        if n < self.coeffs.len() {
            Some(self.coeffs[n].clone())
        } else if self.exact {
            Some(Coefficient::zero(&self.table))
        } else {
            None
        }
    }

    /// Restrict or (for exact series) zero-extend to order `n`.
    pub fn truncate(&self, n: usize) -> Result<AsymptoticSeries> {
        if n >= self.coeffs.len() && !self.exact {
            return Err(Error::Validation(format!(
                "insufficient order: series holds a_0..a_{}, need a_{}",
                self.order(),
                n
            )));
        }
        let mut coeffs: Vec<Coefficient> = self.coeffs.iter().take(n + 1).cloned().collect();
        let exact = if n + 1 < self.coeffs.len() {
            // dropping nonzero data makes an exact series a truncation
            self.exact && self.coeffs[n + 1..].iter().all(|c| c.is_zero())
        } else {
            coeffs.resize(n + 1, Coefficient::zero(&self.table));
            self.exact
        };
        Ok(AsymptoticSeries::new(
            &self.table,
            self.log_coeff.clone(),
            self.exponent.clone(),
            coeffs,
            exact,
        ))
    }

    pub fn scale(&self, k: &Coefficient) -> AsymptoticSeries {
        AsymptoticSeries::new(
            &self.table,
            &self.log_coeff * k,
            self.exponent.clone(),
            self.coeffs.iter().map(|c| c * k).collect(),
            self.exact,
        )
    }

    pub fn neg(&self) -> AsymptoticSeries {
        let m1 = Coefficient::from_integer(&self.table, -1);
        self.scale(&m1)
    }

    pub fn add(&self, rhs: &AsymptoticSeries) -> Result<AsymptoticSeries> {
        if !SymbolTable::compatible(&self.table, &rhs.table) {
            return Err(Error::Validation("incompatible symbol tables".into()));
        }
        // Zero tails carry a meaningless exponent; let the other grid win.
        if self.is_zero() && self.log_coeff.is_zero() {
            return Ok(rhs.clone());
        }
        if rhs.is_zero() && rhs.log_coeff.is_zero() {
            return Ok(self.clone());
        }
        let d = self.exponent.rational_diff(&rhs.exponent).ok_or_else(|| {
            Error::Validation("incompatible exponent families in add".into())
        })?;
        if !d.is_integer() {
            return Err(Error::Validation(format!(
                "exponent grids differ by non-integer {d} in add"
            )));
        }
        let (hi, lo, shift) = if d.is_negative() {
            (rhs, self, (-&d).to_integer())
        } else {
            (self, rhs, d.to_integer())
        };
        let shift: usize = shift.try_into().map_err(|_| {
            Error::Validation("exponent offset too large in add".into())
        })?;
        let inf = usize::MAX;
        let h_hi = if hi.exact { inf } else { hi.order() };
        let h_lo = if lo.exact {
            inf
        } else {
            shift.saturating_add(lo.order())
        };
        let n_max = if h_hi == inf && h_lo == inf {
            hi.order().max(shift + lo.order())
        } else {
            h_hi.min(h_lo)
        };
        let zero = Coefficient::zero(&self.table);
        let mut coeffs = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let a = hi.coeff(n).unwrap_or_else(|| zero.clone());
            let b = if n >= shift {
                lo.coeff(n - shift).unwrap_or_else(|| zero.clone())
            } else {
                zero.clone()
            };
            coeffs.push(&a + &b);
        }
        Ok(AsymptoticSeries::new(
            &self.table,
            &self.log_coeff + &rhs.log_coeff,
            hi.exponent.clone(),
            coeffs,
            hi.exact && lo.exact,
        ))
    }

    pub fn sub(&self, rhs: &AsymptoticSeries) -> Result<AsymptoticSeries> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &AsymptoticSeries) -> Result<AsymptoticSeries> {
        if !SymbolTable::compatible(&self.table, &rhs.table) {
            return Err(Error::Validation("incompatible symbol tables".into()));
        }
        if !self.log_coeff.is_zero() || !rhs.log_coeff.is_zero() {
            return Err(Error::Validation(
                "logarithmic part is not representable under mul; use scale".into(),
            ));
        }
        if self.is_zero() || rhs.is_zero() {
            if self.exact && rhs.exact {
                let mut z = AsymptoticSeries::one(&self.table);
                z.coeffs[0] = Coefficient::zero(&self.table);
                z.normalize();
                return Ok(z);
            }
            // zero only to the known order
            let z = if self.is_zero() { self } else { rhs };
            return Ok(z.clone());
        }
        let exponent = self
            .exponent
            .checked_add(&rhs.exponent)
            .ok_or_else(|| {
                Error::Validation(
                    "product exponent leaves the linear family (two symbolic exponents)".into(),
                )
            })?;
        let inf = usize::MAX;
        let ha = if self.exact { inf } else { self.order() };
        let hb = if rhs.exact { inf } else { rhs.order() };
        let n_max = if ha == inf && hb == inf {
            self.order() + rhs.order()
        } else {
            ha.min(hb)
        };
        let zero = Coefficient::zero(&self.table);
        let mut coeffs = vec![zero; n_max + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j > n_max {
                    break;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Ok(AsymptoticSeries::new(
            &self.table,
            Coefficient::zero(&self.table),
            exponent,
            coeffs,
            self.exact && rhs.exact,
        ))
    }
}

#[cfg(test)]
pub(crate) mod tests_support {
    use super::*;
    use crate::coeffield::parse_coefficient;

    pub fn table() -> Arc<SymbolTable> {
        SymbolTable::standard()
    }

    pub fn ser(exp: i64, coeffs: &[&str], exact: bool) -> AsymptoticSeries {
        let t = table();
        let cs = coeffs
            .iter()
            .map(|c| parse_coefficient(c, &t).unwrap())
            .collect();
        AsymptoticSeries::from_coeffs(&t, Exponent::from_integer(exp), cs, exact)
    }

    pub fn coeff(text: &str) -> Coefficient {
        parse_coefficient(text, &table()).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::tests_support::{ser, table};
    use super::*;
    use crate::coeffield::parse_coefficient;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn normalization_strips_leading_zeros() {
        let s = ser(2, &["0", "0", "3", "1"], false);
        assert_eq!(s.exponent().as_rational().unwrap(), &q(0, 1));
        assert_eq!(s.order(), 1);
        assert_eq!(s.coeffs()[0].to_string(), "3");
    }

    #[test]
    fn add_aligns_grids() {
        // (x + 1 + 2/x) + (3/x + 4/x^2) — second operand exponent -1
        let a = ser(1, &["1", "1", "2"], false);
        let b = ser(-1, &["3", "4"], false);
        let c = a.add(&b).unwrap();
        assert_eq!(c.exponent().as_rational().unwrap(), &q(1, 1));
        // trusted through min(order 2, shift 2 + order 1) = 2
        assert_eq!(c.order(), 2);
        assert_eq!(c.coeffs()[2].to_string(), "5");
    }

    #[test]
    fn add_exact_extends() {
        let a = ser(1, &["1", "1"], true);
        let b = ser(-2, &["7"], true);
        let c = a.add(&b).unwrap();
        assert_eq!(c.order(), 3);
        assert_eq!(c.coeffs()[3].to_string(), "7");
        assert!(c.exact());
    }

    #[test]
    fn add_rejects_fractional_offsets() {
        let t = table();
        let a = ser(1, &["1"], false);
        let b = AsymptoticSeries::from_coeffs(
            &t,
            Exponent::rational(q(1, 2)),
            vec![Coefficient::one(&t)],
            false,
        );
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn mul_truncation_horizon() {
        // (1 + x^-1 + O(x^-2)) * (1 - x^-1 + x^-2 - x^-3 + O(x^-4)) trusted to order 1
        let a = ser(0, &["1", "1"], false);
        let b = ser(0, &["1", "-1", "1", "-1"], false);
        let c = a.mul(&b).unwrap();
        assert_eq!(c.order(), 1);
        assert_eq!(c.coeffs()[1].to_string(), "0");
        assert_eq!(c.coeffs()[0].to_string(), "1");
    }

    #[test]
    fn mul_exact_is_polynomial_product() {
        let a = ser(1, &["1", "2"], true); // x + 2
        let b = ser(1, &["1", "-2"], true); // x - 2
        let c = a.mul(&b).unwrap();
        assert!(c.exact());
        assert_eq!(c.exponent().as_rational().unwrap(), &q(2, 1));
        assert_eq!(c.order(), 2);
        assert_eq!(c.coeffs()[1].to_string(), "0");
        assert_eq!(c.coeffs()[2].to_string(), "-4");
    }

    #[test]
    fn mul_rejects_log_parts() {
        let t = table();
        let lg = AsymptoticSeries::new(
            &t,
            Coefficient::one(&t),
            Exponent::from_integer(-1),
            vec![Coefficient::zero(&t)],
            true,
        );
        let a = ser(0, &["1"], true);
        assert!(lg.mul(&a).is_err());
        assert!(a.mul(&lg).is_err());
    }

    #[test]
    fn symbolic_exponent_grids() {
        let t = table();
        let gp = t.id("gp").unwrap();
        let a = AsymptoticSeries::from_coeffs(
            &t,
            Exponent::symbol(gp),
            vec![Coefficient::one(&t), Coefficient::one(&t)],
            false,
        );
        let b = AsymptoticSeries::from_coeffs(
            &t,
            Exponent::linear(gp, q(1, 1), q(-1, 1)),
            vec![Coefficient::from_integer(&t, 5)],
            false,
        );
        let c = a.add(&b).unwrap();
        assert_eq!(c.coeffs()[1].to_string(), "6");
        // gp + gp stays a linear form with scale 2
        let sq = a.mul(&a).unwrap();
        assert_eq!(sq.exponent().symbol_part().unwrap().1, q(2, 1));
        // gp + ap leaves the family
        let ap = AsymptoticSeries::from_coeffs(
            &t,
            Exponent::symbol(t.id("ap").unwrap()),
            vec![Coefficient::one(&t)],
            false,
        );
        assert!(a.mul(&ap).is_err());
        // gp + rational works
        let p = ser(1, &["1"], true);
        let m = a.mul(&p).unwrap();
        let e = m.exponent();
        assert_eq!(e.symbol_part().unwrap().0, gp);
        assert_eq!(e.offset(), &q(1, 1));
    }

    #[test]
    fn truncate_behaviour() {
        let a = ser(0, &["1", "2", "3"], false);
        assert_eq!(a.truncate(1).unwrap().order(), 1);
        assert!(a.truncate(5).is_err());
        let e = ser(0, &["1", "2"], true);
        let t5 = e.truncate(5).unwrap();
        assert_eq!(t5.order(), 5);
        assert!(t5.exact());
        assert!(t5.coeffs()[5].is_zero());
        // truncating away nonzero exact data demotes exactness
        let t0 = e.truncate(0).unwrap();
        assert!(!t0.exact());
    }

    #[test]
    fn exponent_linear_forms() {
        let t = table();
        let c = parse_coefficient("2*gp - 1", &t).unwrap();
        let e = Exponent::from_coefficient(&c).unwrap();
        assert_eq!(e.symbol_part().unwrap().1, q(2, 1));
        assert_eq!(e.offset(), &q(-1, 1));
        assert_eq!(e.to_coefficient(&t), c);
        assert!(Exponent::from_coefficient(&parse_coefficient("gp^2", &t).unwrap()).is_err());
        assert!(Exponent::from_coefficient(&parse_coefficient("gp + ap", &t).unwrap()).is_err());
        assert!(Exponent::from_coefficient(&parse_coefficient("1/(r+1)", &t).unwrap()).is_err());
    }
}
