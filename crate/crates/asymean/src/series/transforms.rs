//! Powers and logarithms of asymptotic series.
//!
//! Both transforms run on the normalized tail `T = a₀ + a₁x⁻¹ + …` and are
//! driven by one recursion each:
//!
//! * power: `P₀ = a₀^ρ`, `Pₙ = (1/(n a₀)) Σ_{k=1}^{n} (k(1+ρ) − n) a_k P_{n−k}`
//! * log:   `Lₙ = aₙ/a₀ − (1/(n a₀)) Σ_{k=1}^{n−1} k L_k a_{n−k}`
//!
//! The incremental tables ([`PowTable`], [`LogTable`]) let the solver and
//! the mean expansion grow the underlying coefficient list one index at a
//! time while keeping every partial table valid.

use num::{BigRational, Signed, Zero};

use super::{AsymptoticSeries, Exponent};
use crate::coeffield::Coefficient;
use crate::{Error, Result};

/// Incremental table of `Pₙ(ρ)` for one exponent `ρ` over a growing
/// coefficient list.
pub struct PowTable {
    rho: Coefficient,
    p: Vec<Coefficient>,
}

impl PowTable {
    /// `a0_pow` must equal `a₀^ρ`; computing it is the caller's concern
    /// because representability depends on context.
    pub fn new(rho: Coefficient, a0_pow: Coefficient) -> PowTable {
        PowTable {
            rho,
            p: vec![a0_pow],
        }
    }

    pub fn rho(&self) -> &Coefficient {
        &self.rho
    }

    /// `Pₙ`, extending the table as needed. `a` must hold `a₀..aₙ`.
    pub fn get(&mut self, a: &[Coefficient], n: usize) -> Coefficient {
        assert!(a.len() > n, "coefficient list too short for P_{n}");
        let table = self.rho.table().clone();
        while self.p.len() <= n {
            let m = self.p.len();
            let mut acc = Coefficient::zero(&table);
            for k in 1..=m {
                if a[k].is_zero() {
                    continue;
                }
                // (k(1+rho) - m) a_k P_{m-k}
                let kq = Coefficient::from_integer(&table, k as i64);
                let mq = Coefficient::from_integer(&table, m as i64);
                let w = &(&kq * &(&Coefficient::one(&table) + &self.rho)) - &mq;
                if w.is_zero() {
                    continue;
                }
                acc = &acc + &(&(&w * &a[k]) * &self.p[m - k]);
            }
            let div = &Coefficient::from_integer(&table, m as i64) * &a[0];
            self.p.push(&acc / &div);
        }
        self.p[n].clone()
    }
}

/// Incremental table of `Lₙ` (log of the tail) over a growing list.
pub struct LogTable {
    l: Vec<Coefficient>,
}

impl LogTable {
    pub fn new(table: &std::sync::Arc<crate::coeffield::SymbolTable>) -> LogTable {
        LogTable {
            l: vec![Coefficient::zero(table)],
        }
    }

    /// `Lₙ`, extending as needed; `a` must hold `a₀..aₙ` with `a₀ ≠ 0`.
    pub fn get(&mut self, a: &[Coefficient], n: usize) -> Coefficient {
        assert!(a.len() > n, "coefficient list too short for L_{n}");
        let table = a[0].table().clone();
        while self.l.len() <= n {
            let m = self.l.len();
            let mut acc = Coefficient::zero(&table);
            for k in 1..m {
                if self.l[k].is_zero() || a[m - k].is_zero() {
                    continue;
                }
                let kq = Coefficient::from_integer(&table, k as i64);
                acc = &acc + &(&(&kq * &self.l[k]) * &a[m - k]);
            }
            let mq = Coefficient::from_integer(&table, m as i64);
            let lm = &(&a[m] / &a[0]) - &(&acc / &(&mq * &a[0]));
            self.l.push(lm);
        }
        self.l[n].clone()
    }
}

/// Exact `q`-th root of a rational, if one exists.
fn rational_root(q: &BigRational, k: u64) -> Option<BigRational> {
    use num::bigint::Sign;
    let (num, den) = (q.numer(), q.denom());
    if num.sign() == Sign::Minus {
        if k % 2 == 0 {
            return None;
        }
        return rational_root(&-q, k).map(|r| -r);
    }
    let rn = num.nth_root(k as u32);
    let rd = den.nth_root(k as u32);
    if &num::pow::pow(rn.clone(), k as usize) == num
        && &num::pow::pow(rd.clone(), k as usize) == den
    {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

/// `base^rho` for a leading coefficient. Handles `base = 1`, integer
/// exponents of arbitrary coefficients, and exact rational roots.
pub(crate) fn leading_power(base: &Coefficient, rho: &BigRational) -> Result<Coefficient> {
    let table = base.table();
    if base.is_one() {
        return Ok(Coefficient::one(table));
    }
    if rho.is_integer() {
        let e: i64 = rho
            .to_integer()
            .try_into()
            .map_err(|_| Error::Validation("exponent out of range".into()))?;
        return base.pow(e);
    }
    let b = base.as_rational().ok_or_else(|| {
        Error::Validation(format!(
            "cannot raise symbolic leading coefficient {base} to non-integer power {rho}"
        ))
    })?;
    let k: u64 = rho
        .denom()
        .try_into()
        .map_err(|_| Error::Validation("exponent denominator out of range".into()))?;
    let root = rational_root(&b, k).ok_or_else(|| {
        Error::Validation(format!(
            "leading coefficient {b} has no exact rational {k}-th root"
        ))
    })?;
    let p: i64 = rho
        .numer()
        .try_into()
        .map_err(|_| Error::Validation("exponent numerator out of range".into()))?;
    Coefficient::from_rational(table, root).pow(p)
}

/// Result exponent of `(x^e …)^ρ`.
fn power_exponent(e: &Exponent, rho: &Coefficient) -> Result<Exponent> {
    if let Some(q) = rho.as_rational() {
        return Ok(e.mul_rational(&q));
    }
    // symbolic rho: the base exponent must be rational so the product
    // stays a linear form
    let base = e.as_rational().ok_or_else(|| {
        Error::Validation(
            "cannot raise a symbolic-exponent series to a symbolic power".into(),
        )
    })?;
    let lin = Exponent::from_coefficient(rho)?;
    Ok(lin.mul_rational(base))
}

/// `Aᵖ` to order `n`: `x^{e·ρ} Σ Pₖ(ρ) x⁻ᵏ`.
///
/// Requirements: no logarithmic part, a nonzero tail, `a₀^ρ`
/// representable, and enough input order (`A.order ≥ n` unless exact).
pub fn pow_series(a: &AsymptoticSeries, rho: &Coefficient, n: usize) -> Result<AsymptoticSeries> {
    let table = a.table();
    if !a.log_coeff().is_zero() {
        return Err(Error::Validation(
            "cannot raise a series with a logarithmic part to a power".into(),
        ));
    }
    if a.is_zero() {
        return Err(Error::Validation("cannot raise the zero series to a power".into()));
    }
    if rho.is_zero() {
        return Ok(AsymptoticSeries::one(table));
    }
    let exponent = power_exponent(a.exponent(), rho)?;

    // integer rho >= 0 of an exact series stays exact; compute far enough
    // to see every nonzero coefficient in that case
    let exact_case = a.exact()
        && rho
            .as_rational()
            .map(|q| q.is_integer() && !q.is_negative())
            .unwrap_or(false);
    let n_eff = if exact_case {
        let m: usize = rho
            .as_rational()
            .unwrap()
            .to_integer()
            .try_into()
            .unwrap_or(0);
        n.max(m.saturating_mul(a.order()))
    } else {
        n
    };
    let src = a.truncate(n_eff)?;
    let tail = src.coeffs();

    let a0_pow = match rho.as_rational() {
        Some(q) => leading_power(&tail[0], &q)?,
        None => {
            if tail[0].is_one() {
                Coefficient::one(table)
            } else {
                return Err(Error::Validation(format!(
                    "cannot raise leading coefficient {} to symbolic power {rho}",
                    tail[0]
                )));
            }
        }
    };
    let mut pt = PowTable::new(rho.clone(), a0_pow);
    let mut coeffs = Vec::with_capacity(n_eff + 1);
    for m in 0..=n_eff {
        coeffs.push(pt.get(tail, m));
    }
    let exact = exact_case && coeffs[(n + 1).min(coeffs.len())..].iter().all(|c| c.is_zero());
    coeffs.truncate(n + 1);
    Ok(AsymptoticSeries::from_coeffs(
        table,
        exponent,
        coeffs,
        exact,
    ))
}

/// `log A` to absolute order `x⁻ⁿ`, for `A = 1 + a₁x⁻¹ + …` (no log part,
/// exponent 0, `a₀ = 1`).
pub fn log_series(a: &AsymptoticSeries, n: usize) -> Result<AsymptoticSeries> {
    let table = a.table();
    if !a.log_coeff().is_zero() {
        return Err(Error::Validation(
            "log of a series with a logarithmic part is not representable".into(),
        ));
    }
    if !a
        .exponent()
        .as_rational()
        .map(|q| q.is_zero())
        .unwrap_or(false)
    {
        return Err(Error::Validation(
            "log_series requires leading exponent 0".into(),
        ));
    }
    if !a.coeffs()[0].is_one() {
        return Err(Error::Validation(
            "log_series requires leading coefficient 1".into(),
        ));
    }
    let src = a.truncate(n)?;
    let tail = src.coeffs();
    let mut lt = LogTable::new(table);
    let mut coeffs = Vec::with_capacity(n + 1);
    for m in 0..=n {
        coeffs.push(lt.get(tail, m));
    }
    let exact = a.exact() && coeffs.iter().all(|c| c.is_zero());
    Ok(AsymptoticSeries::from_coeffs(
        table,
        Exponent::from_integer(0),
        coeffs,
        exact,
    ))
}
