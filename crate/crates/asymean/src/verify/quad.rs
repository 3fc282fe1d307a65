//! Simpson quadrature over interval-valued integrands.
//!
//! Node evaluations are certified enclosures; the *discretization* error
//! of the composite rule is estimated by Richardson comparison of the
//! one-panel and two-panel values (`|S₂ − S₁|/15`). That estimate is a
//! heuristic, not a proven bound — it equals the *leading* error term of
//! `S₂`, so the returned enclosure is the refined value widened by four
//! times the estimate, covering the higher-order corrections for
//! integrands whose fourth derivative varies tamely (every integrand
//! used here is smooth on the integration interval).

use num::BigRational;

use super::interval::{pow2, Interval};
use crate::{Error, Result};

/// Integrand: certified enclosure of `f` at a rational node.
pub type Integrand<'a> = dyn Fn(&BigRational) -> Result<Interval> + 'a;

const GUARD: u32 = 32;
const MAX_DEPTH: u32 = 28;

fn simpson_panel(
    f: &Integrand,
    a: &BigRational,
    b: &BigRational,
    fa: &Interval,
    fb: &Interval,
    bits: u32,
) -> Result<(Interval, BigRational, Interval)> {
    let mid = (a + b) / BigRational::from_integer(2.into());
    let fm = f(&mid)?;
    let h6 = (b - a) / BigRational::from_integer(6.into());
    let s = fa
        .add(&fm.scale(&BigRational::from_integer(4.into())))
        .add(fb)
        .scale(&h6)
        .outward(bits + GUARD);
    Ok((s, mid, fm))
}

#[allow(clippy::too_many_arguments)]
fn adapt(
    f: &Integrand,
    a: &BigRational,
    b: &BigRational,
    fa: &Interval,
    fb: &Interval,
    whole: &Interval,
    tol: &BigRational,
    depth: u32,
    bits: u32,
) -> Result<Interval> {
    let mid = (a + b) / BigRational::from_integer(2.into());
    let fm = f(&mid)?;
    let (left, _, _) = simpson_panel(f, a, &mid, fa, &fm, bits)?;
    let (right, _, _) = simpson_panel(f, &mid, b, &fm, fb, bits)?;
    let s2 = left.add(&right);
    let est = s2
        .sub(whole)
        .abs()
        .hi()
        .clone()
        / BigRational::from_integer(15.into());
    if &est <= tol {
        // 4× pad: the estimate is only the leading error term of s2
        let pad = &est * BigRational::from_integer(4.into());
        return Ok(s2.widen(&pad).outward(bits + GUARD));
    }
    if depth == 0 {
        return Err(Error::Precision(format!(
            "adaptive Simpson exhausted depth {MAX_DEPTH} before reaching the target"
        )));
    }
    let half_tol = tol / BigRational::from_integer(2.into());
    let l = adapt(f, a, &mid, fa, &fm, &left, &half_tol, depth - 1, bits)?;
    let r = adapt(f, &mid, b, &fm, fb, &right, &half_tol, depth - 1, bits)?;
    Ok(l.add(&r).outward(bits + GUARD))
}

/// Adaptive Simpson enclosure of `∫ₐᵇ f` with relative target
/// `2^{−rel_bits}` (absolute when the rough magnitude is below one ulp).
pub fn adaptive_simpson(
    f: &Integrand,
    a: &BigRational,
    b: &BigRational,
    rel_bits: u32,
    bits: u32,
) -> Result<Interval> {
    if a >= b {
        return Err(Error::Validation(
            "quadrature interval must satisfy a < b".into(),
        ));
    }
    let fa = f(a)?;
    let fb = f(b)?;
    let (whole, _, _) = simpson_panel(f, a, b, &fa, &fb, bits)?;
    let scale = whole.abs().hi().clone().max(pow2(-(rel_bits as i64)));
    let tol = scale * pow2(-(rel_bits as i64));
    adapt(f, a, b, &fa, &fb, &whole, &tol, MAX_DEPTH, bits)
}

/// Composite Simpson with `panels` equal panels (`2·panels + 1` nodes),
/// no discretization estimate — the caller compares the raw value
/// against an oracle.
pub fn fixed_simpson(
    f: &Integrand,
    a: &BigRational,
    b: &BigRational,
    panels: u32,
    bits: u32,
) -> Result<Interval> {
    if a >= b || panels == 0 {
        return Err(Error::Validation(
            "composite Simpson needs a < b and at least one panel".into(),
        ));
    }
    let h = (b - a) / BigRational::from_integer(panels.into());
    let mut sum = Interval::zero();
    let mut left = a.clone();
    let mut fleft = f(a)?;
    for _ in 0..panels {
        let right = &left + &h;
        let fright = f(&right)?;
        let (s, _, _) = simpson_panel(f, &left, &right, &fleft, &fright, bits)?;
        sum = sum.add(&s).outward(bits + GUARD);
        left = right;
        fleft = fright;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{One, Signed, Zero};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cubic_is_exact_per_panel() {
        // Simpson integrates cubics exactly: int_0^3 x^3 = 81/4
        let f = |x: &BigRational| -> Result<Interval> {
            Ok(Interval::point(x * x * x))
        };
        let v = fixed_simpson(&f, &BigRational::zero(), &q(3, 1), 1, 64).unwrap();
        assert!(v.contains(&q(81, 4)));
        assert!(v.width() < pow2(-60));
    }

    #[test]
    fn adaptive_matches_antiderivative() {
        // int_100^110 (x^-2 + x^-3) = (1/100 - 1/110) + (1/2)(1/10000 - 1/12100)
        let f = |x: &BigRational| -> Result<Interval> {
            let ix = x.recip();
            let ix2 = &ix * &ix;
            Ok(Interval::point(&ix2 + &ix2 * &ix))
        };
        let exact = q(1, 100) - q(1, 110)
            + (q(1, 10000) - q(1, 12100)) / BigRational::from_integer(2.into());
        let v = adaptive_simpson(&f, &q(100, 1), &q(110, 1), 48, 96).unwrap();
        assert!(v.contains(&exact), "{}", v.to_decimal(30));
        let rel = v.width() / &exact;
        assert!(rel < pow2(-44), "width {rel}");
    }

    #[test]
    fn depth_exhaustion_is_a_precision_error() {
        // |x − 1/5| has a kink no dyadic bisection node ever hits, and
        // 1/5's dyadic orbit {1/5, 2/5, 4/5, 3/5} avoids the roots of the
        // panel error c(1/3 − c), so Richardson never settles to an
        // extreme target. (A kink at 1/3 would sit exactly on an error
        // root and Simpson would come out exact.)
        let f = |x: &BigRational| -> Result<Interval> {
            Ok(Interval::point((x - q(1, 5)).abs()))
        };
        let err = adaptive_simpson(&f, &q(-1, 1), &BigRational::one(), 200, 256).unwrap_err();
        assert!(matches!(err, Error::Precision(_)), "{err}");
    }

    #[test]
    fn fixed_simpson_converges_fourth_order() {
        let f = |x: &BigRational| -> Result<Interval> {
            Ok(Interval::point(x.recip()))
        };
        // int_1^2 dx/x = ln 2
        let ln2 = super::super::interval::ln2(120);
        let coarse = fixed_simpson(&f, &BigRational::one(), &q(2, 1), 4, 96).unwrap();
        let fine = fixed_simpson(&f, &BigRational::one(), &q(2, 1), 8, 96).unwrap();
        let e_coarse = (coarse.midpoint() - ln2.midpoint()).abs();
        let e_fine = (fine.midpoint() - ln2.midpoint()).abs();
        // error ratio ~ 2^4
        assert!(&e_fine * BigRational::from_integer(12.into()) < e_coarse);
        assert!(&e_fine * BigRational::from_integer(20.into()) > e_coarse);
    }
}
