//! Asymptotic expansion of the integral mean `I_f(x+s, x+t)`.
//!
//! For a function with expansion `f(x) = x^u (b₀ + b₁x⁻¹ + …)` the mean
//! value of `f` over `[x+s, x+t]` is again a series `C(x) = Σ cₙ x^{u−n}`
//! whose coefficients come from termwise integration; inverting
//! `f(I) = C` gives the integral mean `I = x + a₁ + a₂x⁻¹ + …`. The
//! standard path handles any nonzero leading exponent (numeric or a
//! designated symbol); the logarithmic path handles `f = b·log x + x⁻¹ Σ
//! bₙx⁻ⁿ`, the shape the digamma function has.
//!
//! Coefficients are computed in the endpoint symbols `s, t`; the familiar
//! midpoint/half-width variables `α = (t+s)/2`, `β = (t−s)/2` are a
//! display-time substitution.

use num::BigRational;
use std::sync::Arc;

use crate::coeffield::{binom, power_sum, Coefficient, Polynomial, SymbolId, SymbolTable};
use crate::series::{AsymptoticSeries, Exponent, PowTable};
use crate::{Error, Result};

/// Which variables to print coefficients in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DisplayMode {
    /// Raw endpoint symbols.
    St,
    /// Midpoint/half-width form via `s = α−β`, `t = α+β`.
    AlphaBeta,
}

/// Interval endpoints for the mean, plus the preferred display variables.
#[derive(Clone, Debug)]
pub struct MeanSpec {
    s: Coefficient,
    t: Coefficient,
    display: DisplayMode,
}

impl MeanSpec {
    pub fn new(s: Coefficient, t: Coefficient, display: DisplayMode) -> Result<MeanSpec> {
        if let (Some(qs), Some(qt)) = (s.as_rational(), t.as_rational()) {
            if qs == qt {
                return Err(Error::Validation(
                    "degenerate interval: s = t".into(),
                ));
            }
        }
        Ok(MeanSpec { s, t, display })
    }

    /// The generic spec: endpoints are the symbols `s` and `t`.
    pub fn symbolic(table: &Arc<SymbolTable>, display: DisplayMode) -> MeanSpec {
        let s = Coefficient::symbol(table, table.id("s").expect("standard table"));
        let t = Coefficient::symbol(table, table.id("t").expect("standard table"));
        MeanSpec { s, t, display }
    }

    pub fn numeric(
        table: &Arc<SymbolTable>,
        s: BigRational,
        t: BigRational,
        display: DisplayMode,
    ) -> Result<MeanSpec> {
        MeanSpec::new(
            Coefficient::from_rational(table, s),
            Coefficient::from_rational(table, t),
            display,
        )
    }

    pub fn s(&self) -> &Coefficient {
        &self.s
    }

    pub fn t(&self) -> &Coefficient {
        &self.t
    }

    pub fn display(&self) -> DisplayMode {
        self.display
    }

    pub fn table(&self) -> &Arc<SymbolTable> {
        self.s.table()
    }

    /// Midpoint `α = (t+s)/2`.
    pub fn alpha(&self) -> Coefficient {
        (&self.t + &self.s).scale(&BigRational::new(1.into(), 2.into()))
    }

    /// Half-width `β = (t−s)/2`.
    pub fn beta(&self) -> Coefficient {
        (&self.t - &self.s).scale(&BigRational::new(1.into(), 2.into()))
    }

    /// Rewrite a coefficient for display: in `AlphaBeta` mode the endpoint
    /// symbols are replaced by `α−β` and `α+β`.
    pub fn to_display(&self, c: &Coefficient) -> Coefficient {
        if self.display == DisplayMode::St {
            return c.clone();
        }
        let table = self.table();
        let (Some(sid), Some(tid)) = (table.id("s"), table.id("t")) else {
            return c.clone();
        };
        let (Some(aid), Some(bid)) = (table.id("alpha"), table.id("beta")) else {
            return c.clone();
        };
        let alpha = Polynomial::symbol(table, aid);
        let beta = Polynomial::symbol(table, bid);
        c.substitute_symbol(sid, &(&alpha - &beta))
            .substitute_symbol(tid, &(&alpha + &beta))
    }
}

/// An expanded integral mean: `x + a₁ + a₂x⁻¹ + …` with its provenance.
#[derive(Clone, Debug)]
pub struct MeanExpansion {
    /// The mean series, exponent 1 and `a₀ = 1`, coefficients in `s, t`.
    pub series: AsymptoticSeries,
    pub spec: MeanSpec,
    /// Identifier of the expanded function (filled by the catalog layer).
    pub source: String,
    /// Factor divided out of `f` to reach `b₀ = 1`; the mean is scale-invariant.
    pub scale: Coefficient,
}

impl MeanExpansion {
    /// The series with coefficients rewritten per the spec's display mode.
    pub fn display_series(&self) -> AsymptoticSeries {
        let coeffs = self
            .series
            .coeffs()
            .iter()
            .map(|c| self.spec.to_display(c))
            .collect();
        AsymptoticSeries::new(
            self.series.table(),
            self.spec.to_display(self.series.log_coeff()),
            self.series.exponent().clone(),
            coeffs,
            self.series.exact(),
        )
    }

    /// Indices whose coefficient kept a symbolic denominator after
    /// reduction. Published families reduce to polynomials; anything
    /// else is surfaced here rather than silently printed.
    pub fn nonpolynomial_indices(&self) -> Vec<usize> {
        self.series
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_polynomial())
            .map(|(i, _)| i)
            .collect()
    }
}

fn exponent_coefficient(f: &AsymptoticSeries) -> Coefficient {
    f.exponent().to_coefficient(f.table())
}

fn check_exponent_symbols(u: &Coefficient, spec: &MeanSpec) -> Result<()> {
    let table = spec.table();
    for i in 0..table.len() {
        let id = SymbolId(i as u32);
        if u.contains(id) && (spec.s.contains(id) || spec.t.contains(id)) {
            return Err(Error::Validation(format!(
                "exponent symbol {} also appears in the endpoints",
                table.name(id)
            )));
        }
    }
    Ok(())
}

/// Mean-value coefficients from a raw coefficient list: the series
/// `(1/(t−s)) ∫ₓ₊ₛ^{x+t} Σ bₖ z^{u−k} dz = Σ cₙ x^{u−n}`.
fn c_from_b(b: &[Coefficient], u: &Coefficient, spec: &MeanSpec, n: usize) -> Vec<Coefficient> {
    let table = spec.table();
    let mut cs = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut c = Coefficient::zero(table);
        for (k, bk) in b.iter().enumerate().take(m + 1) {
            if bk.is_zero() {
                continue;
            }
            let uk = u - &Coefficient::from_integer(table, k as i64);
            // power_sum already carries the 1/(m−k+1) of the interval mean
            let term = &(bk * &binom(&uk, (m - k) as u64))
                * &power_sum((m - k) as u64, &spec.s, &spec.t);
            c = &c + &term;
        }
        cs.push(c);
    }
    cs
}

/// Coefficients `cₙ` of the integrated series for a normalized `f`.
///
/// `cₙ = Σ_{k=0}^{n} (bₖ/(n+1−k)) · binom(u−k, n−k) · power_sum(n−k, s, t)`,
/// one formula for every exponent: the would-be logarithmic term at
/// `k = u+1` (integer `u ≥ 0`) merges back into the same expression.
pub fn c_coeffs(f: &AsymptoticSeries, spec: &MeanSpec, n: usize) -> Result<Vec<Coefficient>> {
    if !f.log_coeff().is_zero() {
        return Err(Error::Validation(
            "log part present: c_coeffs expects a pure power series".into(),
        ));
    }
    if !f.coeffs()[0].is_one() {
        return Err(Error::Validation(
            "b\u{2080} \u{2260} 1: normalize f before computing mean coefficients".into(),
        ));
    }
    let u = exponent_coefficient(f);
    check_exponent_symbols(&u, spec)?;
    let b = f.truncate(n)?;
    Ok(c_from_b(b.coeffs(), &u, spec, n))
}

/// Coefficients of the mean of `1/x`: `dₙ = ((−1)ⁿ/(n+1))·power_sum(n, s, t)`.
pub fn d_coeffs(spec: &MeanSpec, n: usize) -> Vec<Coefficient> {
    (0..=n)
        .map(|m| {
            let sign = if m % 2 == 0 { 1 } else { -1 };
            power_sum(m as u64, &spec.s, &spec.t).scale(&BigRational::from_integer(sign.into()))
        })
        .collect()
}

/// Expand the integral mean of `f = x^u (b₀ + b₁x⁻¹ + …)`, `u ≠ 0`.
///
/// `u` may be numeric rational or carry one designated symbol treated as
/// transcendental. `f` is scaled to `b₀ = 1` first (means are invariant
/// under `f ↦ λf`); the factor is kept on the result. Only `b₀ … b_{N−2}`
/// influence `a_N`: the `b_N` contributions to the composition and to
/// `c_N` cancel (`P₀ = 1` both sides), and so do the `b_{N−1}` ones
/// (`P₁(ρ) = ρ·a₁` against `ρ·power_sum(1)`, and `a₁ = α` always) — so an
/// order `N−2` input suffices.
pub fn mean_expand_standard(
    f: &AsymptoticSeries,
    spec: &MeanSpec,
    n: usize,
) -> Result<MeanExpansion> {
    let table = f.table();
    if !f.log_coeff().is_zero() {
        return Err(Error::Validation(
            "log part present: use mean_expand_log".into(),
        ));
    }
    if f.is_zero() {
        return Err(Error::Validation("f is the zero series".into()));
    }
    let u = exponent_coefficient(f);
    if u.is_zero() {
        return Err(Error::Validation(
            "u = 0: a bounded f has no asymptotic mean on this path (a log-bearing f belongs to mean_expand_log)"
                .into(),
        ));
    }
    check_exponent_symbols(&u, spec)?;

    let scale = f.coeffs()[0].clone();
    let fnorm = f.scale(&scale.inverse()?);
    if !(fnorm.exact() || fnorm.order() + 2 >= n) {
        return Err(Error::Validation(format!(
            "insufficient order: expansion to order {n} needs f coefficients b_0..b_{}",
            n.saturating_sub(2)
        )));
    }
    let zero = Coefficient::zero(table);
    let one = Coefficient::one(table);
    let bs: Vec<Coefficient> = (0..=n)
        .map(|k| fnorm.coeff(k).unwrap_or_else(|| zero.clone()))
        .collect();
    let cs = c_from_b(&bs, &u, spec, n);

    // every table starts from a₀ = 1, so P₀(ρ) = 1 throughout
    let mut tables: Vec<PowTable> = (0..=n)
        .map(|j| {
            let rho = &u - &Coefficient::from_integer(table, j as i64);
            PowTable::new(rho, one.clone())
        })
        .collect();

    let mut a: Vec<Coefficient> = vec![one.clone()];
    for m in 1..=n {
        let mq = Coefficient::from_integer(table, m as i64);
        let mut bracket = Coefficient::zero(table);
        for (j, bj) in bs.iter().enumerate().take(m + 1).skip(1) {
            if bj.is_zero() {
                continue;
            }
            bracket = &bracket + &(bj * &tables[j].get(&a, m - j));
        }
        let mut ksum = Coefficient::zero(table);
        for k in 1..m {
            if a[k].is_zero() {
                continue;
            }
            let kq = Coefficient::from_integer(table, k as i64);
            let weight = &(&kq * &(&one + &u)) - &mq;
            if weight.is_zero() {
                continue;
            }
            ksum = &ksum + &(&(&weight * &a[k]) * &tables[0].get(&a, m - k));
        }
        let inner = &(&bracket + &ksum.checked_div(&mq)?) - &cs[m];
        a.push(-&inner.checked_div(&u)?);
    }

    let series = AsymptoticSeries::from_coeffs(table, Exponent::from_integer(1), a, false);
    Ok(MeanExpansion {
        series,
        spec: spec.clone(),
        source: String::new(),
        scale,
    })
}

/// Expand the integral mean of `f = b·log x + x⁻¹(b₀ + b₁x⁻¹ + …)`, `b ≠ 0`.
///
/// The tail exponent is fixed at −1 (the shape the digamma expansion has);
/// other tail exponents are rejected. `Lₙ` tracks the logarithm of the
/// solution and the tail contributes through the same `cₙ` generator as
/// the standard path, taken at `u = −1`.
pub fn mean_expand_log(f: &AsymptoticSeries, spec: &MeanSpec, n: usize) -> Result<MeanExpansion> {
    let table = f.table();
    let b = f.log_coeff().clone();
    if b.is_zero() {
        return Err(Error::Validation(
            "no log part: use mean_expand_standard".into(),
        ));
    }
    let tail_zero = f.coeffs().iter().all(|c| c.is_zero());
    if !tail_zero {
        let ok = f
            .exponent()
            .as_rational()
            .map(|q| *q == BigRational::from_integer((-1).into()))
            .unwrap_or(false);
        if !ok {
            return Err(Error::Validation(
                "tail exponent \u{2260} \u{2212}1 is not supported on the log path".into(),
            ));
        }
    }
    if !(tail_zero || f.exact() || f.order() + 1 >= n) {
        return Err(Error::Validation(format!(
            "insufficient order: expansion to order {n} needs tail coefficients b_0..b_{}",
            n.saturating_sub(1)
        )));
    }
    let zero = Coefficient::zero(table);
    let one = Coefficient::one(table);
    let bs: Vec<Coefficient> = (0..n.max(1))
        .map(|k| {
            if tail_zero {
                zero.clone()
            } else {
                f.coeff(k).unwrap_or_else(|| zero.clone())
            }
        })
        .collect();
    let minus_one = Coefficient::from_integer(table, -1);
    let cs = c_from_b(&bs, &minus_one, spec, n.saturating_sub(1));
    let ds = d_coeffs(spec, n);
    let binv = b.inverse()?;

    // P-tables for the solution raised to −(k+1), k = 0..n−1; a₀ = 1
    let mut tables: Vec<PowTable> = (0..n.max(1))
        .map(|k| {
            let rho = Coefficient::from_integer(table, -(k as i64) - 1);
            PowTable::new(rho, one.clone())
        })
        .collect();

    let mut a: Vec<Coefficient> = vec![one.clone()];
    let mut l: Vec<Coefficient> = vec![zero.clone()]; // l[k] = L_k, L_0 unused
    for m in 1..=n {
        let mq = Coefficient::from_integer(table, m as i64);
        let mut asum = Coefficient::zero(table);
        for k in 1..m {
            if l[k].is_zero() || a[m - k].is_zero() {
                continue;
            }
            let kq = Coefficient::from_integer(table, k as i64);
            asum = &asum + &(&(&kq * &l[k]) * &a[m - k]);
        }
        let asum = asum.checked_div(&mq)?;
        let mut psum = Coefficient::zero(table);
        for (k, bk) in bs.iter().enumerate().take(m) {
            if bk.is_zero() {
                continue;
            }
            psum = &psum + &(bk * &tables[k].get(&a, m - 1 - k));
        }
        let am = &(&(&(-&ds[m].checked_div(&mq)?) + &(&cs[m - 1] * &binv)) + &asum)
            - &(&psum * &binv);
        l.push(&am - &asum);
        a.push(am);
    }

    let series = AsymptoticSeries::from_coeffs(table, Exponent::from_integer(1), a, false);
    Ok(MeanExpansion {
        series,
        spec: spec.clone(),
        source: String::new(),
        scale: one,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffield::{bernoulli, parse_coefficient};
    use crate::series::{log_series, pow_series};

    fn table() -> Arc<SymbolTable> {
        SymbolTable::standard()
    }

    fn spec(t: &Arc<SymbolTable>) -> MeanSpec {
        MeanSpec::symbolic(t, DisplayMode::AlphaBeta)
    }

    fn coeff(t: &Arc<SymbolTable>, text: &str) -> Coefficient {
        parse_coefficient(text, t).unwrap()
    }

    fn assert_display(exp: &MeanExpansion, idx: usize, want: &str) {
        let got = exp.spec.to_display(&exp.series.coeffs()[idx]);
        let want = coeff(exp.series.table(), want);
        assert_eq!(got, want, "a_{idx}: got {got}");
    }

    /// x^u as an exact one-term series.
    fn power(t: &Arc<SymbolTable>, e: Exponent) -> AsymptoticSeries {
        AsymptoticSeries::from_coeffs(t, e, vec![Coefficient::one(t)], true)
    }

    /// Normalized digamma shape: log x + x⁻¹ Σ (−1)ⁿ Bₙ₊₁/(n+1) xⁿ.
    fn digamma_like(t: &Arc<SymbolTable>, order: usize) -> AsymptoticSeries {
        let coeffs: Vec<Coefficient> = (0..=order)
            .map(|k| {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let q = bernoulli(k + 1) * BigRational::new(sign.into(), ((k + 1) as i64).into());
                Coefficient::from_rational(t, q)
            })
            .collect();
        AsymptoticSeries::new(
            t,
            Coefficient::one(t),
            Exponent::from_integer(-1),
            coeffs,
            false,
        )
    }

    /// Normalized polygamma shape at exponent −m: b₁ = m/2,
    /// b_{2k} = binom(2k+m−1, 2k)·B_{2k}, other odd coefficients zero.
    fn polygamma_like(t: &Arc<SymbolTable>, m: &Coefficient, order: usize) -> AsymptoticSeries {
        let mut coeffs = vec![Coefficient::one(t)];
        for k in 1..=order {
            if k == 1 {
                coeffs.push(m.scale(&BigRational::new(1.into(), 2.into())));
            } else if k % 2 == 0 {
                let top = &(m + &Coefficient::from_integer(t, k as i64))
                    - &Coefficient::one(t);
                let c = binom(&top, k as u64)
                    .scale(&bernoulli(k));
                coeffs.push(c);
            } else {
                coeffs.push(Coefficient::zero(t));
            }
        }
        let e = if let Some(q) = m.as_rational() {
            Exponent::rational(-q)
        } else {
            Exponent::from_coefficient(&-m).unwrap()
        };
        AsymptoticSeries::from_coeffs(t, e, coeffs, false)
    }

    #[test]
    fn d_generator() {
        let t = table();
        let sp = spec(&t);
        let ds = d_coeffs(&sp, 2);
        assert!(ds[0].is_one());
        assert_eq!(sp.to_display(&ds[1]), coeff(&t, "-alpha"));
        assert_eq!(sp.to_display(&ds[2]), coeff(&t, "alpha^2 + beta^2/3"));
    }

    #[test]
    fn c_generator_powers() {
        let t = table();
        let sp = spec(&t);
        // f = x: mean of x over the interval is x + α
        let f = power(&t, Exponent::from_integer(1));
        let cs = c_coeffs(&f, &sp, 3).unwrap();
        assert_eq!(sp.to_display(&cs[1]), coeff(&t, "alpha"));
        assert!(cs[2].is_zero() && cs[3].is_zero());
        // f = x^r: cₙ = binom(r,n)·(tⁿ⁺¹−sⁿ⁺¹)/((n+1)(t−s))
        let r = Coefficient::symbol(&t, t.id("r").unwrap());
        let f = power(&t, Exponent::symbol(t.id("r").unwrap()));
        let cs = c_coeffs(&f, &sp, 3).unwrap();
        for m in 0..=3u64 {
            let want = &binom(&r, m) * &power_sum(m, sp.s(), sp.t());
            assert_eq!(cs[m as usize], want);
        }
        // the b_{u+1}/x case: f = x (u=1) padded with b₂ ≠ 0 integrates
        // through the same formula (binom(−1, n−2) alternates)
        let f2 = AsymptoticSeries::from_coeffs(
            &t,
            Exponent::from_integer(1),
            vec![
                Coefficient::one(&t),
                Coefficient::zero(&t),
                Coefficient::one(&t),
            ],
            true,
        );
        let cs = c_coeffs(&f2, &sp, 4).unwrap();
        // at n=3 the k=2 term contributes binom(−1,1)·ps(1) = d₁
        let base = c_coeffs(&power(&t, Exponent::from_integer(1)), &sp, 3).unwrap();
        let d = d_coeffs(&sp, 2);
        assert_eq!(&cs[3] - &base[3], d[1]);
    }

    #[test]
    fn rejects_bad_inputs() {
        let t = table();
        let sp = spec(&t);
        // b₀ ≠ 1 in c_coeffs
        let f = AsymptoticSeries::from_coeffs(
            &t,
            Exponent::from_integer(1),
            vec![Coefficient::from_integer(&t, 2)],
            true,
        );
        assert!(c_coeffs(&f, &sp, 2).unwrap_err().to_string().contains("normalize"));
        // exponent symbol clashing with the endpoints
        let f = power(&t, Exponent::symbol(t.id("s").unwrap()));
        let e = mean_expand_standard(&f, &sp, 2).unwrap_err();
        assert!(e.to_string().contains("endpoints"));
        // u = 0
        let f = AsymptoticSeries::from_coeffs(
            &t,
            Exponent::from_integer(0),
            vec![Coefficient::one(&t), Coefficient::one(&t)],
            true,
        );
        let e = mean_expand_standard(&f, &sp, 2).unwrap_err();
        assert!(e.to_string().contains("u = 0"));
        // log path on a log-free series
        assert!(mean_expand_log(&f, &sp, 2).is_err());
        // standard path on a log-bearing series
        let g = digamma_like(&t, 4);
        let e = mean_expand_standard(&g, &sp, 2).unwrap_err();
        assert!(e.to_string().contains("mean_expand_log"));
        // log tail at the wrong exponent
        let bad = AsymptoticSeries::new(
            &t,
            Coefficient::one(&t),
            Exponent::from_integer(-2),
            vec![Coefficient::one(&t)],
            false,
        );
        let e = mean_expand_log(&bad, &sp, 2).unwrap_err();
        assert!(e.to_string().contains("tail exponent"));
        // degenerate numeric interval
        assert!(MeanSpec::numeric(
            &t,
            BigRational::from_integer(1.into()),
            BigRational::from_integer(1.into()),
            DisplayMode::St
        )
        .is_err());
    }

    #[test]
    fn arithmetic_mean_row() {
        // f = x: mean is exactly x + α, all further coefficients vanish
        let t = table();
        let sp = spec(&t);
        let f = power(&t, Exponent::from_integer(1));
        let e = mean_expand_standard(&f, &sp, 6).unwrap();
        assert_display(&e, 1, "alpha");
        for k in 2..=6 {
            assert!(e.series.coeffs()[k].is_zero(), "a_{k}");
        }
    }

    #[test]
    fn generalized_logarithmic_mean_row() {
        // f = x^r, symbolic exponent
        let t = table();
        let sp = spec(&t);
        let f = power(&t, Exponent::symbol(t.id("r").unwrap()));
        let e = mean_expand_standard(&f, &sp, 4).unwrap();
        assert_display(&e, 1, "alpha");
        assert_display(&e, 2, "(r - 1)*beta^2/6");
        assert_display(&e, 3, "-(r - 1)*alpha*beta^2/6");
        assert_display(&e, 4, "(r - 1)*beta^2*((-2*r^2 - 5*r + 13)*beta^2 + 60*alpha^2)/360");
        // denominators in r must reduce away
        assert!(e.nonpolynomial_indices().is_empty());
    }

    #[test]
    fn logarithmic_and_geometric_rows() {
        let t = table();
        let sp = spec(&t);
        // r = −1: logarithmic mean
        let f = power(&t, Exponent::from_integer(-1));
        let e = mean_expand_standard(&f, &sp, 4).unwrap();
        assert_display(&e, 2, "-beta^2/3");
        assert_display(&e, 3, "alpha*beta^2/3");
        assert_display(&e, 4, "-beta^2*(15*alpha^2 + 4*beta^2)/45");
        // r = −2: geometric mean
        let f = power(&t, Exponent::from_integer(-2));
        let e = mean_expand_standard(&f, &sp, 4).unwrap();
        assert_display(&e, 2, "-beta^2/2");
        assert_display(&e, 3, "alpha*beta^2/2");
        assert_display(&e, 4, "-beta^2*(4*alpha^2 + beta^2)/8");
    }

    #[test]
    fn identric_mean_row() {
        // f = log x: the identric mean
        let t = table();
        let sp = spec(&t);
        let f = AsymptoticSeries::new(
            &t,
            Coefficient::one(&t),
            Exponent::from_integer(0),
            vec![Coefficient::zero(&t)],
            true,
        );
        let e = mean_expand_log(&f, &sp, 6).unwrap();
        assert_display(&e, 1, "alpha");
        assert_display(&e, 2, "-beta^2/6");
        assert_display(&e, 3, "alpha*beta^2/6");
        assert_display(&e, 4, "-beta^2*(60*alpha^2 + 13*beta^2)/360");
        assert_display(&e, 5, "alpha*beta^2*(20*alpha^2 + 13*beta^2)/120");
        assert_display(&e, 6, "-beta^2*(7560*alpha^4 + 9828*alpha^2*beta^2 + 737*beta^4)/45360");
        // r → 0 of the generalized-logarithmic row agrees
        let fr = power(&t, Exponent::symbol(t.id("r").unwrap()));
        let er = mean_expand_standard(&fr, &sp, 4).unwrap();
        let rid = t.id("r").unwrap();
        let zero = Polynomial::zero(&t);
        for k in 2..=4 {
            let at0 = er.series.coeffs()[k].substitute_symbol(rid, &zero);
            assert_eq!(at0, e.series.coeffs()[k], "r=0 vs identric at a_{k}");
        }
    }

    #[test]
    fn digamma_mean() {
        let t = table();
        let sp = spec(&t);
        let f = digamma_like(&t, 6);
        let e = mean_expand_log(&f, &sp, 4).unwrap();
        assert_display(&e, 1, "alpha");
        assert_display(&e, 2, "-beta^2/6");
        assert_display(&e, 3, "(2*alpha - 1)*beta^2/12");
        assert_display(&e, 4, "-(5 + 60*alpha*(alpha - 1) + 13*beta^2)*beta^2/360");
    }

    #[test]
    fn ratpoly_example() {
        // f = x⁻² + x⁻³
        let t = table();
        let sp = spec(&t);
        let f = AsymptoticSeries::from_coeffs(
            &t,
            Exponent::from_integer(-2),
            vec![Coefficient::one(&t), Coefficient::one(&t)],
            true,
        );
        let e = mean_expand_standard(&f, &sp, 7).unwrap();
        assert_display(&e, 1, "alpha");
        assert_display(&e, 2, "-beta^2/2");
        assert_display(&e, 3, "(beta^2/4)*(2*alpha - 1)");
        assert_display(&e, 4, "-(beta^2/8)*(4*alpha^2 - 4*alpha + beta^2 - 3)");
        assert_display(
            &e,
            5,
            "(beta^2/16)*(8*alpha^3 - 12*alpha^2 + 6*alpha*(beta^2 - 3) - 3*(beta^2 + 3))",
        );
        assert_display(
            &e,
            6,
            "-beta^2*(16*alpha^4 - 32*alpha^3 + 24*alpha^2*beta^2 - 72*alpha^2 - 24*alpha*beta^2 - 72*alpha + 2*beta^4 - 18*beta^2 - 27)/32",
        );
        assert_display(
            &e,
            7,
            "beta^2*(32*alpha^5 - 80*alpha^4 + 80*alpha^3*beta^2 - 240*alpha^3 - 120*alpha^2*beta^2 - 360*alpha^2 + 20*alpha*beta^4 - 180*alpha*beta^2 - 270*alpha - 10*beta^4 - 78*beta^2 - 81)/64",
        );
    }

    #[test]
    fn polygamma_means() {
        let t = table();
        let sp = spec(&t);
        // numeric m = 1..4
        for m in 1i64..=4 {
            let mc = Coefficient::from_integer(&t, m);
            let f = polygamma_like(&t, &mc, 6);
            let e = mean_expand_standard(&f, &sp, 4).unwrap();
            let m1 = m + 1;
            assert_display(&e, 2, &format!("-{m1}*beta^2/6"));
            assert_display(&e, 3, &format!("{m1}*(2*alpha - 1)*beta^2/12"));
            assert_display(
                &e,
                4,
                &format!(
                    "{m1}*(2*{m}^2*beta^2 - 5*{m}*beta^2 - 13*beta^2 - 60*alpha^2 + 60*alpha + 5*{m} - 5)*beta^2/360"
                ),
            );
        }
        // symbolic m (the designated symbol r)
        let mc = Coefficient::symbol(&t, t.id("r").unwrap());
        let f = polygamma_like(&t, &mc, 6);
        let e = mean_expand_standard(&f, &sp, 4).unwrap();
        assert_display(&e, 2, "-(r + 1)*beta^2/6");
        assert_display(&e, 3, "(r + 1)*(2*alpha - 1)*beta^2/12");
        assert_display(
            &e,
            4,
            "(r + 1)*(2*r^2*beta^2 - 5*r*beta^2 - 13*beta^2 - 60*alpha^2 + 60*alpha + 5*r - 5)*beta^2/360",
        );
        assert!(e.nonpolynomial_indices().is_empty());
    }

    #[test]
    fn iterated_means_lose_low_coefficients() {
        let t = table();
        let sp = spec(&t);
        let logx = AsymptoticSeries::new(
            &t,
            Coefficient::one(&t),
            Exponent::from_integer(0),
            vec![Coefficient::zero(&t)],
            true,
        );
        let it1 = mean_expand_log(&logx, &sp, 7).unwrap();
        let it2 = mean_expand_standard(&it1.series, &sp, 7).unwrap();
        assert!(it2.series.coeffs()[2].is_zero());
        assert!(it2.series.coeffs()[3].is_zero());
        assert_display(&it2, 4, "-beta^4/18");
        assert_display(&it2, 5, "alpha*beta^4/3");
        assert_display(&it2, 6, "-4*alpha^2*beta^4/3 - 13*beta^6/135");
        let it3 = mean_expand_standard(&it2.series, &sp, 6).unwrap();
        for k in 2..=5 {
            assert!(it3.series.coeffs()[k].is_zero(), "third iteration a_{k}");
        }
        assert_display(&it3, 6, "-beta^6/9");
    }

    #[test]
    fn standard_composition_identity() {
        // f(I_f(x)) must reproduce the integrated series C
        let t = table();
        let sp = spec(&t);
        let f = AsymptoticSeries::from_coeffs(
            &t,
            Exponent::from_integer(-2),
            vec![Coefficient::one(&t), Coefficient::one(&t)],
            true,
        );
        let e = mean_expand_standard(&f, &sp, 6).unwrap();
        let composed = crate::solver::compose(&f, &e.series, 6).unwrap();
        let cs = c_coeffs(&f, &sp, 6).unwrap();
        assert_eq!(
            composed.exponent().as_rational().unwrap(),
            &BigRational::from_integer((-2).into())
        );
        for (k, c) in cs.iter().enumerate() {
            assert_eq!(&composed.coeffs()[k], c, "c_{k}");
        }
    }

    #[test]
    fn log_composition_identity() {
        // b·log(A) + Σ bₖ A^{−1−k} = b·(mean of log) + Σ cₙ x^{−1−n}
        let t = table();
        let sp = spec(&t);
        let f = digamma_like(&t, 6);
        let n = 5usize;
        let e = mean_expand_log(&f, &sp, n + 1).unwrap();
        let a = &e.series;

        // lhs tail: log(A·x⁻¹) + Σ bₖ·A^{−1−k}
        let shifted = AsymptoticSeries::from_coeffs(
            &t,
            Exponent::from_integer(0),
            a.coeffs().to_vec(),
            false,
        );
        let mut lhs = log_series(&shifted, n + 1).unwrap();
        for k in 0..=n {
            let rho = Coefficient::from_integer(&t, -1 - (k as i64));
            let term = pow_series(a, &rho, n - k).unwrap().scale(&f.coeffs()[k]);
            lhs = lhs.add(&term).unwrap();
        }

        // rhs tail: b·(mean of log − log x) + C from the tail coefficients
        let ps: Vec<Coefficient> = (1..=(n + 1))
            .map(|m| {
                let sign = if m % 2 == 0 { -1 } else { 1 };
                power_sum(m as u64, sp.s(), sp.t())
                    .scale(&BigRational::new(sign.into(), (m as i64).into()))
            })
            .collect();
        let logmean = AsymptoticSeries::from_coeffs(&t, Exponent::from_integer(-1), ps, false);
        let cs = c_from_b(f.coeffs(), &Coefficient::from_integer(&t, -1), &sp, n);
        let ctail = AsymptoticSeries::from_coeffs(&t, Exponent::from_integer(-1), cs, false);
        let rhs = logmean.add(&ctail).unwrap();

        let diff = lhs.sub(&rhs).unwrap();
        assert!(diff.is_zero(), "log-path composition residue: {diff}");
    }

    #[test]
    fn only_coefficients_to_n_minus_two_matter() {
        // truncating f at order N−2 leaves a_N unchanged; order N−3 is
        // genuinely insufficient (b_{N−2} does enter a_N)
        let t = table();
        let sp = spec(&t);
        let full = polygamma_like(&t, &Coefficient::from_integer(&t, 1), 6);
        let n = 4usize;
        let reference = mean_expand_standard(&full, &sp, n).unwrap();
        let short = full.truncate(n - 2).unwrap();
        let e = mean_expand_standard(&short, &sp, n).unwrap();
        assert_eq!(e.series.coeffs(), reference.series.coeffs());
        assert!(mean_expand_standard(&full.truncate(n - 3).unwrap(), &sp, n).is_err());
        let mut cs = short.coeffs().to_vec();
        cs[n - 2] = &cs[n - 2] + &Coefficient::one(&t);
        let perturbed =
            AsymptoticSeries::from_coeffs(&t, short.exponent().clone(), cs, false);
        let ep = mean_expand_standard(&perturbed, &sp, n).unwrap();
        assert_ne!(ep.series.coeffs()[n], e.series.coeffs()[n]);
    }

    #[test]
    fn scaling_is_recorded_and_invariant() {
        let t = table();
        let sp = spec(&t);
        let f = AsymptoticSeries::from_coeffs(
            &t,
            Exponent::from_integer(-2),
            vec![Coefficient::from_integer(&t, 7), Coefficient::from_integer(&t, 7)],
            true,
        );
        let e = mean_expand_standard(&f, &sp, 4).unwrap();
        assert_eq!(e.scale, Coefficient::from_integer(&t, 7));
        let g = f.scale(&Coefficient::from_rational(&t, BigRational::new(1.into(), 7.into())));
        let e2 = mean_expand_standard(&g, &sp, 4).unwrap();
        assert_eq!(e.series.coeffs(), e2.series.coeffs());
    }
}
