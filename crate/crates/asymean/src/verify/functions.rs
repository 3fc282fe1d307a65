//! Interval evaluation of `ψ`, `ψ⁽ᵐ⁾`, and `ln Γ` at positive rational
//! arguments.
//!
//! Each function shifts the argument up by the recurrence until the
//! asymptotic series reaches the precision target, then sums the series
//! with the classical enveloping remainder: for positive real argument
//! the truncation error is bounded by the first omitted term, so the
//! enclosure is the partial sum widened by that term's magnitude.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use std::sync::Mutex;
use std::sync::OnceLock;

use super::interval::{fix_ceil, fix_floor, fixed_to_interval, ln_rational, pi, Interval};
use crate::coeffield::{bernoulli_list, factorial};
use crate::{Error, Result};

const GUARD: u32 = 32;

/// Growing shared cache of Bernoulli numbers (`B₁ = −1/2` convention;
/// only even indices are read here).
fn bernoulli_cached(n: usize) -> BigRational {
    static CACHE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(bernoulli_list(64)));
    let mut list = cache.lock().unwrap();
    if n >= list.len() {
        *list = bernoulli_list(n + 32);
    }
    list[n].clone()
}

/// Shift threshold: the `B₂ⱼ` series bottoms out near `e^{−2πX}`, so
/// reaching `2^{−bits}` needs `X ≳ (bits·ln 2)/(2π)`.
fn shift_threshold(bits: u32) -> BigRational {
    BigRational::from_integer(BigInt::from((bits as u64 + 48) / 9 + 8))
}

fn ensure_positive(x: &BigRational, name: &str) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::Validation(format!(
            "{name} requires a positive argument, got {x}"
        )))
    }
}

/// Reciprocal-power sum `Σ_{k=0}^{n−1} (x+k)^{−p}` as directed
/// fixed-point bounds at scale `2^w`.
fn recip_power_sum(x: &BigRational, n: u64, p: u64, w: u32) -> (BigInt, BigInt) {
    let mut s_lo = BigInt::zero();
    let mut s_hi = BigInt::zero();
    for k in 0..n {
        let base = x + BigRational::from_integer(k.into());
        let num = num::pow::pow(base.numer().clone(), p as usize);
        let den = num::pow::pow(base.denom().clone(), p as usize);
        let scaled = den << w as usize;
        s_lo += scaled.div_floor(&num);
        s_hi += scaled.div_ceil(&num);
    }
    (s_lo, s_hi)
}

/// Asymptotic tail `Σ_j B₂ⱼ·coeff(j)·pwr₀·inv2ʲ` as directed fixed-point
/// bounds at scale `2^w`, including the enveloping remainder (bounded by
/// the first omitted term); `None` if the terms stop shrinking before
/// reaching `2^{−bits−8}`.
///
/// The power ladder stays exact rational: the true powers drop far below
/// one fixed-point ulp while the Bernoulli numerators grow to compensate,
/// so a rounded ladder would pin at an ulp and report false divergence.
/// Only the finished term is projected, and its small denominators keep
/// the exact arithmetic cheap.
fn bernoulli_tail(
    inv2: &BigRational,
    pwr0: &BigRational,
    mut coeff: impl FnMut(u64) -> BigRational,
    bits: u32,
    w: u32,
) -> Option<(BigInt, BigInt)> {
    let target = BigInt::one() << (w - bits - 8) as usize;
    let mut pwr = pwr0.clone();
    let mut s_lo = BigInt::zero();
    let mut s_hi = BigInt::zero();
    let mut prev: Option<BigInt> = None;
    for j in 1..=4096u64 {
        pwr *= inv2;
        let term = coeff(j) * bernoulli_cached(2 * j as usize) * &pwr;
        let t_lo = fix_floor(&term, w);
        let t_hi = fix_ceil(&term, w);
        let mag = t_lo.abs().max(t_hi.abs());
        if let Some(pm) = &prev {
            if &mag > pm {
                return None; // divergence point reached before target
            }
        }
        if mag < target {
            return Some((s_lo - &mag, s_hi + &mag));
        }
        s_lo += t_lo;
        s_hi += t_hi;
        prev = Some(mag);
    }
    None
}

/// Enclosure of the digamma function `ψ(x)` for rational `x > 0`.
pub fn digamma(x: &BigRational, bits: u32) -> Result<Interval> {
    ensure_positive(x, "digamma")?;
    let work = bits + GUARD;
    let fixw = work + 16;
    let mut threshold = shift_threshold(bits);
    for _ in 0..4 {
        let n = shift_count(x, &threshold);
        let xx = x + BigRational::from_integer(n.into());
        let inv = xx.recip();
        let inv2 = &inv * &inv;
        // psi(X) = ln X - 1/(2X) - sum B_{2j}/(2j X^{2j})
        let tail = bernoulli_tail(
            &inv2,
            &BigRational::one(),
            |j| BigRational::new(1.into(), (2 * j).into()),
            bits,
            fixw,
        );
        if let Some((t_lo, t_hi)) = tail {
            // psi(x) = psi(X) - sum_{k<n} 1/(x+k); fold the shift into
            // the tail's fixed-point bounds before converting back
            let (sh_lo, sh_hi) = recip_power_sum(x, n, 1, fixw);
            let sub = fixed_to_interval(t_lo + sh_lo, t_hi + sh_hi, fixw);
            let ln_x = ln_rational(&xx, bits + 8)?;
            let head = ln_x
                .sub(&Interval::point(&inv / BigRational::from_integer(2.into())))
                .sub(&sub);
            return Ok(head.outward(work));
        }
        threshold *= BigRational::from_integer(2.into());
    }
    Err(Error::Precision(
        "digamma series did not reach the precision target".into(),
    ))
}

fn shift_count(x: &BigRational, threshold: &BigRational) -> u64 {
    if x >= threshold {
        0
    } else {
        ((threshold - x).ceil().to_integer() + BigInt::one())
            .try_into()
            .unwrap_or(u64::MAX)
    }
}

/// Enclosure of the `m`-th polygamma function `ψ⁽ᵐ⁾(x)`, `m ≥ 1`,
/// unnormalized (carries its natural `(−1)^{m−1}(m−1)!` leading scale).
pub fn polygamma(m: u64, x: &BigRational, bits: u32) -> Result<Interval> {
    if m == 0 {
        return digamma(x, bits);
    }
    ensure_positive(x, "polygamma")?;
    let work = bits + GUARD;
    let fixw = work + 16;
    let sign = if m % 2 == 1 { 1i64 } else { -1i64 };
    let fact_m1 = BigRational::from_integer(factorial(m - 1));
    let fact_m = &fact_m1 * BigRational::from_integer(m.into());
    let mut threshold = shift_threshold(bits);
    for _ in 0..4 {
        let n = shift_count(x, &threshold);
        let xx = x + BigRational::from_integer(n.into());
        let inv = xx.recip();
        let mut inv_pow_m = BigRational::one(); // X^{-m}
        for _ in 0..m {
            inv_pow_m *= &inv;
        }
        let inv2 = &inv * &inv;
        // (-1)^{m-1} psi^{(m)}(X) = (m-1)!/X^m + m!/(2 X^{m+1})
        //                           + sum_j B_{2j} (2j+m-1)!/(2j)! X^{-2j-m}
        let tail = bernoulli_tail(
            &inv2,
            &inv_pow_m,
            |j| BigRational::new(factorial(2 * j + m - 1), factorial(2 * j)),
            bits,
            fixw,
        );
        if let Some((t_lo, t_hi)) = tail {
            // psi^{(m)}(x) = psi^{(m)}(X) + (-1)^{m+1} m! sum_{k<n} (x+k)^{-m-1}
            let (sh_lo, sh_hi) = recip_power_sum(x, n, m + 1, fixw);
            let shifted = fixed_to_interval(t_lo, t_hi, fixw)
                .add(&fixed_to_interval(sh_lo, sh_hi, fixw).scale(&fact_m));
            let head = Interval::point(&fact_m1 * &inv_pow_m)
                .add(&Interval::point(
                    &fact_m * &inv_pow_m * &inv / BigRational::from_integer(2.into()),
                ))
                .add(&shifted)
                .scale(&BigRational::from_integer(sign.into()));
            return Ok(head.outward(work));
        }
        threshold *= BigRational::from_integer(2.into());
    }
    Err(Error::Precision(
        "polygamma series did not reach the precision target".into(),
    ))
}

/// Enclosure of `ln Γ(x)` for rational `x > 0`.
pub fn ln_gamma(x: &BigRational, bits: u32) -> Result<Interval> {
    ensure_positive(x, "ln_gamma")?;
    let work = bits + GUARD;
    let fixw = work + 16;
    let mut threshold = shift_threshold(bits);
    for _ in 0..4 {
        let n = shift_count(x, &threshold);
        let xx = x + BigRational::from_integer(n.into());
        let inv = xx.recip();
        let inv2 = &inv * &inv;
        // Stirling: (X - 1/2) ln X - X + ln(2π)/2
        //           + sum_j B_{2j} / ((2j)(2j-1) X^{2j-1})
        let tail = bernoulli_tail(
            &inv2,
            &xx, // X^{+1}, so the first term carries X^{-1}
            |j| BigRational::new(1.into(), (2 * j * (2 * j - 1)).into()),
            bits,
            fixw,
        );
        if let Some((t_lo, t_hi)) = tail {
            // ln Gamma(x) = ln Gamma(X) - ln((x)(x+1)…(x+n−1)): one ln of
            // the rising factorial instead of n separate ones
            let mut rising = BigRational::one();
            for k in 0..n {
                rising *= x + BigRational::from_integer(k.into());
            }
            let shift = if n == 0 {
                Interval::zero()
            } else {
                ln_rational(&rising, bits + 8)?
            };
            let ln_x = ln_rational(&xx, bits + 8)?;
            let two_pi = pi(bits + 8).scale(&BigRational::from_integer(2.into()));
            let ln_two_pi = super::interval::ln_interval(&two_pi, bits + 8)?;
            let half = BigRational::new(1.into(), 2.into());
            let head = ln_x
                .scale(&(&xx - &half))
                .sub(&Interval::point(xx.clone()))
                .add(&ln_two_pi.scale(&half))
                .add(&fixed_to_interval(t_lo, t_hi, fixw));
            return Ok(head.sub(&shift).outward(work));
        }
        threshold *= BigRational::from_integer(2.into());
    }
    Err(Error::Precision(
        "ln_gamma series did not reach the precision target".into(),
    ))
}
