//! Built-in function families and their asymptotic expansions.
//!
//! Each entry produces an [`AsymptoticSeries`] to a requested order and
//! can be fed straight into the integral-mean machinery via [`CatalogEntry::mean_of`].
//! The gamma-ratio families (`wallis_power`, `wallis_ratio`) carry
//! hardcoded coefficient tables — their generating algorithm is external
//! to this crate — so they are order-bounded; everything else extends to
//! any order.

use num::{BigRational, One, Zero};
use std::sync::Arc;

use crate::coeffield::{bernoulli, binom, parse_coefficient, parse_rational, Coefficient,
    Polynomial, SymbolTable};
use crate::intmean::{mean_expand_log, mean_expand_standard, MeanExpansion, MeanSpec};
use crate::series::{AsymptoticSeries, Exponent};
use crate::{Error, Result};

/// Exponent of the `power` family: a rational, or the designated symbol `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PowerParam {
    Numeric(BigRational),
    Symbolic,
}

/// Derivative order of the `polygamma` family: an integer `m ≥ 1`, or the
/// designated symbol `r` treated as transcendental.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolygammaOrder {
    Numeric(u64),
    Symbolic,
}

/// Gamma-ratio shift parameters `s′, t′`: numeric rationals, or the
/// internal variables `α′, β′, γ′` kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WallisParams {
    Numeric { s: BigRational, t: BigRational },
    Symbolic,
}

/// A function family the crate knows how to expand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogEntry {
    /// `x^r`
    Power(PowerParam),
    /// `log x`
    Log,
    /// `ψ(x) = Γ'(x)/Γ(x)`
    Digamma,
    /// `ψ⁽ᵐ⁾(x)`, normalized so the leading coefficient is 1
    Polygamma(PolygammaOrder),
    /// `Σ cᵢ x^{u−i}` with user-supplied rational coefficients
    RatPoly {
        coeffs: Vec<BigRational>,
        exponent: i64,
    },
    /// `(Γ(x+1+t′)/Γ(x+1+s′))^{1/(t′−s′)}` — the internal variables
    /// `α′ = (s′+t′+1)/2`, `β′ = (1−(t′−s′)²)/4` absorb a unit shift of
    /// the argument
    WallisPower(WallisParams),
    /// `Γ(x+1+t′)/Γ(x+1+s′)`, same shift convention as [`CatalogEntry::WallisPower`]
    WallisRatio(WallisParams),
}

/// Number of tabulated `wallis_power` Q-polynomials (`Q₀ … Q₆`).
pub const WALLIS_POWER_COEFFS: usize = 7;
/// Number of tabulated `wallis_ratio` C-polynomials (`C₀ … C₃`).
pub const WALLIS_RATIO_COEFFS: usize = 4;

const Q_TABLE: [&str; 7] = [
    "1",
    "ap",
    "bp/6",
    "-ap*bp/6",
    "ap^2*bp/6 - bp/60 - 13*bp^2/360",
    "-ap^3*bp/6 + ap*bp/20 + 13*ap*bp^2/120",
    "ap^4*bp/6 - ap^2*bp/10 - 13*ap^2*bp^2/60 + bp/126 + 53*bp^2/2520 + 737*bp^3/45360",
];

// Cₙ = binom(γ′,n)·Bₙ^{(γ′+1)}(α′ + (γ′+1)/2) in generalized Bernoulli
// polynomials; B₂ = α′² − (γ′+1)/12 and B₃ = α′(α′² − (γ′+1)/4), so C₃'s
// bracket carries α′² where C₂'s carries 3α′² (cross-checked numerically
// against the gamma ratio — a pattern-matched 3α′² in C₃ is off by
// α′³γ′(γ′−1)(γ′−2)/3).
const C_TABLE: [&str; 4] = [
    "1",
    "ap*gp",
    "gp*(bp + 3*ap^2*(gp - 1))/6",
    "ap*gp*(bp + ap^2*(gp - 1))*(gp - 2)/6",
];

fn prime_values(s: &BigRational, t: &BigRational) -> (BigRational, BigRational, BigRational) {
    let one = BigRational::one();
    let half = BigRational::new(1.into(), 2.into());
    let quarter = BigRational::new(1.into(), 4.into());
    let g = t - s;
    let a = (s + t + &one) * half;
    let b = (&one - &g * &g) * quarter;
    (a, b, g)
}

fn substitute_primes(
    c: &Coefficient,
    table: &Arc<SymbolTable>,
    a: &BigRational,
    b: &BigRational,
    g: &BigRational,
) -> Coefficient {
    let val = |q: &BigRational| Polynomial::constant(table, q.clone());
    c.substitute_symbol(table.id("ap").unwrap(), &val(a))
        .substitute_symbol(table.id("bp").unwrap(), &val(b))
        .substitute_symbol(table.id("gp").unwrap(), &val(g))
}

fn wallis_coeffs(
    table: &Arc<SymbolTable>,
    raw: &[&str],
    n: usize,
    params: &WallisParams,
) -> Vec<Coefficient> {
    raw.iter()
        .take(n + 1)
        .map(|text| {
            let c = parse_coefficient(text, table).expect("tabulated polynomial");
            match params {
                WallisParams::Symbolic => c,
                WallisParams::Numeric { s, t } => {
                    let (a, b, g) = prime_values(s, t);
                    substitute_primes(&c, table, &a, &b, &g)
                }
            }
        })
        .collect()
}

/// Normalized polygamma coefficient list: `b₀ = 1`, `b₁ = m/2`,
/// `b₂ₖ = binom(2k+m−1, 2k)·B₂ₖ`, odd indices ≥ 3 zero.
fn polygamma_coeffs(table: &Arc<SymbolTable>, m: &Coefficient, n: usize) -> Vec<Coefficient> {
    let mut coeffs = vec![Coefficient::one(table)];
    for k in 1..=n {
        if k == 1 {
            coeffs.push(m.scale(&BigRational::new(1.into(), 2.into())));
        } else if k % 2 == 0 {
            let top = &(m + &Coefficient::from_integer(table, k as i64)) - &Coefficient::one(table);
            coeffs.push(binom(&top, k as u64).scale(&bernoulli(k)));
        } else {
            coeffs.push(Coefficient::zero(table));
        }
    }
    coeffs
}

impl CatalogEntry {
    /// Parse an entry spec: `power:r=<rat|sym>`, `log`, `digamma`,
    /// `polygamma:m=<int|sym>`, `ratpoly:[c,...]@u=<int>`,
    /// `wallis_power[:s=<rat>,t=<rat>]`, `wallis_ratio[:s=<rat>,t=<rat>]`
    /// (the Wallis families stay in the symbolic variables α′, β′, γ′
    /// when the shifts are omitted).
    pub fn parse(input: &str) -> Result<CatalogEntry> {
        let bad = |msg: String| Error::Parse(msg);
        let (head, rest) = match input.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (input, None),
        };
        match head {
            "log" => {
                if rest.is_some() {
                    return Err(bad("log takes no parameters".into()));
                }
                Ok(CatalogEntry::Log)
            }
            "digamma" => {
                if rest.is_some() {
                    return Err(bad("digamma takes no parameters".into()));
                }
                Ok(CatalogEntry::Digamma)
            }
            "power" => {
                let r = rest
                    .and_then(|r| r.strip_prefix("r="))
                    .ok_or_else(|| bad("power needs r=<rational> or r=sym".into()))?;
                if r == "sym" {
                    return Ok(CatalogEntry::Power(PowerParam::Symbolic));
                }
                Ok(CatalogEntry::Power(PowerParam::Numeric(parse_rational(r)?)))
            }
            "polygamma" => {
                let m = rest
                    .and_then(|r| r.strip_prefix("m="))
                    .ok_or_else(|| bad("polygamma needs m=<integer> or m=sym".into()))?;
                if m == "sym" {
                    return Ok(CatalogEntry::Polygamma(PolygammaOrder::Symbolic));
                }
                let m: u64 = m
                    .parse()
                    .map_err(|_| bad(format!("bad polygamma order {m:?}")))?;
                Ok(CatalogEntry::Polygamma(PolygammaOrder::Numeric(m)))
            }
            "ratpoly" => {
                let rest = rest.ok_or_else(|| bad("ratpoly needs [c,...]@u=<int>".into()))?;
                let (list, u) = rest
                    .split_once("@u=")
                    .ok_or_else(|| bad("ratpoly needs [c,...]@u=<int>".into()))?;
                let list = list
                    .strip_prefix('[')
                    .and_then(|l| l.strip_suffix(']'))
                    .ok_or_else(|| bad("ratpoly coefficient list must be bracketed".into()))?;
                let coeffs = list
                    .split(',')
                    .map(|c| parse_rational(c.trim()))
                    .collect::<Result<Vec<_>>>()?;
                let exponent: i64 = u
                    .parse()
                    .map_err(|_| bad(format!("bad ratpoly exponent {u:?}")))?;
                if coeffs.is_empty() || coeffs[0].is_zero() {
                    return Err(Error::Validation(
                        "ratpoly leading coefficient must be nonzero".into(),
                    ));
                }
                Ok(CatalogEntry::RatPoly { coeffs, exponent })
            }
            "wallis_power" | "wallis_ratio" => {
                let params = match rest {
                    None => WallisParams::Symbolic,
                    Some(r) => {
                        let (s, t) = r
                            .split_once(',')
                            .ok_or_else(|| bad(format!("{head} needs s=<rat>,t=<rat>")))?;
                        let s = s
                            .strip_prefix("s=")
                            .ok_or_else(|| bad(format!("{head} needs s=<rat>,t=<rat>")))?;
                        let t = t
                            .strip_prefix("t=")
                            .ok_or_else(|| bad(format!("{head} needs s=<rat>,t=<rat>")))?;
                        let s = parse_rational(s)?;
                        let t = parse_rational(t)?;
                        if s == t {
                            return Err(Error::Validation(
                                "degenerate gamma-ratio shifts: s\u{2032} = t\u{2032}".into(),
                            ));
                        }
                        WallisParams::Numeric { s, t }
                    }
                };
                if head == "wallis_power" {
                    Ok(CatalogEntry::WallisPower(params))
                } else {
                    Ok(CatalogEntry::WallisRatio(params))
                }
            }
            other => Err(bad(format!("unknown catalog entry {other:?}"))),
        }
    }

    /// Canonical id string, parseable back by [`CatalogEntry::parse`].
    pub fn id(&self) -> String {
        match self {
            CatalogEntry::Power(PowerParam::Numeric(r)) => format!("power:r={r}"),
            CatalogEntry::Power(PowerParam::Symbolic) => "power:r=sym".into(),
            CatalogEntry::Log => "log".into(),
            CatalogEntry::Digamma => "digamma".into(),
            CatalogEntry::Polygamma(PolygammaOrder::Numeric(m)) => format!("polygamma:m={m}"),
            CatalogEntry::Polygamma(PolygammaOrder::Symbolic) => "polygamma:m=sym".into(),
            CatalogEntry::RatPoly { coeffs, exponent } => {
                let list: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
                format!("ratpoly:[{}]@u={exponent}", list.join(","))
            }
            CatalogEntry::WallisPower(WallisParams::Symbolic) => "wallis_power".into(),
            CatalogEntry::WallisPower(WallisParams::Numeric { s, t }) => {
                format!("wallis_power:s={s},t={t}")
            }
            CatalogEntry::WallisRatio(WallisParams::Symbolic) => "wallis_ratio".into(),
            CatalogEntry::WallisRatio(WallisParams::Numeric { s, t }) => {
                format!("wallis_ratio:s={s},t={t}")
            }
        }
    }

    /// Number of coefficients the entry can produce, `None` when
    /// unbounded; a table-bound entry expands to order `max_order − 1`.
    pub fn max_order(&self) -> Option<usize> {
        match self {
            CatalogEntry::WallisPower(_) => Some(WALLIS_POWER_COEFFS),
            CatalogEntry::WallisRatio(_) => Some(WALLIS_RATIO_COEFFS),
            _ => None,
        }
    }

    /// Whether the expansion carries a `log x` term (routes the mean to
    /// the logarithmic path).
    pub fn has_log(&self) -> bool {
        matches!(self, CatalogEntry::Log | CatalogEntry::Digamma)
    }

    /// The factor scaled out to normalize the leading coefficient to 1:
    /// `(−1)^{m−1}(m−1)!` for numeric polygamma. `None` when no
    /// normalization happens or it is not representable (symbolic `m`).
    pub fn normalization(&self, table: &Arc<SymbolTable>) -> Option<Coefficient> {
        match self {
            CatalogEntry::Polygamma(PolygammaOrder::Numeric(m)) if *m >= 1 => {
                let fact = crate::coeffield::factorial(*m - 1);
                let sign = if (m - 1) % 2 == 0 { 1 } else { -1 };
                Some(Coefficient::from_rational(
                    table,
                    BigRational::from_integer(fact * sign),
                ))
            }
            _ => None,
        }
    }

    /// Expand the entry to order `n` (coefficients `a₀ … a_n`).
    pub fn get_series(&self, table: &Arc<SymbolTable>, n: usize) -> Result<AsymptoticSeries> {
        if let Some(count) = self.max_order() {
            if n >= count {
                let (kind, name) = match self {
                    CatalogEntry::WallisPower(_) => ("wallis_power", "Q"),
                    _ => ("wallis_ratio", "C"),
                };
                return Err(Error::Validation(format!(
                    "{kind} is table-bound: the printed {name}-polynomials end at {name}{last}, \
                     order {n} would need the external generating algorithm",
                    last = count - 1
                )));
            }
        }
        let one = Coefficient::one(table);
        match self {
            CatalogEntry::Power(p) => {
                let e = match p {
                    PowerParam::Numeric(r) => Exponent::rational(r.clone()),
                    PowerParam::Symbolic => {
                        Exponent::symbol(table.id("r").expect("standard table"))
                    }
                };
                Ok(AsymptoticSeries::from_coeffs(table, e, vec![one], true))
            }
            CatalogEntry::Log => Ok(AsymptoticSeries::new(
                table,
                one,
                Exponent::from_integer(0),
                vec![Coefficient::zero(table)],
                true,
            )),
            CatalogEntry::Digamma => {
                let coeffs = (0..=n)
                    .map(|k| {
                        let sign = if k % 2 == 0 { 1 } else { -1 };
                        let q = bernoulli(k + 1)
                            * BigRational::new(sign.into(), ((k + 1) as i64).into());
                        Coefficient::from_rational(table, q)
                    })
                    .collect();
                Ok(AsymptoticSeries::new(
                    table,
                    one,
                    Exponent::from_integer(-1),
                    coeffs,
                    false,
                ))
            }
            CatalogEntry::Polygamma(order) => {
                let (m, e) = match order {
                    PolygammaOrder::Numeric(m) => {
                        if *m < 1 {
                            return Err(Error::Validation(
                                "polygamma order must satisfy m \u{2265} 1".into(),
                            ));
                        }
                        (
                            Coefficient::from_integer(table, *m as i64),
                            Exponent::from_integer(-(*m as i64)),
                        )
                    }
                    PolygammaOrder::Symbolic => {
                        let rid = table.id("r").expect("standard table");
                        (
                            Coefficient::symbol(table, rid),
                            Exponent::linear(rid, -BigRational::one(), BigRational::zero()),
                        )
                    }
                };
                Ok(AsymptoticSeries::from_coeffs(
                    table,
                    e,
                    polygamma_coeffs(table, &m, n),
                    false,
                ))
            }
            CatalogEntry::RatPoly { coeffs, exponent } => {
                let cs = coeffs
                    .iter()
                    .map(|q| Coefficient::from_rational(table, q.clone()))
                    .collect();
                Ok(AsymptoticSeries::from_coeffs(
                    table,
                    Exponent::from_integer(*exponent),
                    cs,
                    true,
                ))
            }
            CatalogEntry::WallisPower(params) => Ok(AsymptoticSeries::from_coeffs(
                table,
                Exponent::from_integer(1),
                wallis_coeffs(table, &Q_TABLE, n, params),
                false,
            )),
            CatalogEntry::WallisRatio(params) => {
                let e = match params {
                    WallisParams::Symbolic => {
                        Exponent::symbol(table.id("gp").expect("standard table"))
                    }
                    WallisParams::Numeric { s, t } => Exponent::rational(t - s),
                };
                Ok(AsymptoticSeries::from_coeffs(
                    table,
                    e,
                    wallis_coeffs(table, &C_TABLE, n, params),
                    false,
                ))
            }
        }
    }

    /// Integral mean of the entry over `[x+s, x+t]`.
    pub fn mean_of(&self, spec: &MeanSpec, n: usize) -> Result<MeanExpansion> {
        let table = spec.table();
        let mut expansion = if self.has_log() {
            let f = self.get_series(table, n.saturating_sub(1))?;
            mean_expand_log(&f, spec, n)?
        } else {
            // a_N depends on b₀..b_{N−2} only, which is what keeps the
            // order-bounded Wallis tables usable here
            let f = self.get_series(table, n.saturating_sub(2))?;
            mean_expand_standard(&f, spec, n)?
        };
        expansion.source = self.id();
        if let Some(lambda) = self.normalization(table) {
            expansion.scale = &expansion.scale * &lambda;
        }
        Ok(expansion)
    }
}

/// One row of the catalog listing.
#[derive(Clone, Debug)]
pub struct EntryInfo {
    pub id: &'static str,
    pub parameters: &'static str,
    pub max_order: Option<usize>,
}

/// The families the catalog understands, for the CLI listing.
pub fn list_entries() -> Vec<EntryInfo> {
    vec![
        EntryInfo {
            id: "power",
            parameters: "r=<rational|sym>",
            max_order: None,
        },
        EntryInfo {
            id: "log",
            parameters: "",
            max_order: None,
        },
        EntryInfo {
            id: "digamma",
            parameters: "",
            max_order: None,
        },
        EntryInfo {
            id: "polygamma",
            parameters: "m=<integer|sym>",
            max_order: None,
        },
        EntryInfo {
            id: "ratpoly",
            parameters: "[c,...]@u=<integer>",
            max_order: None,
        },
        EntryInfo {
            id: "wallis_power",
            parameters: "[s=<rational>,t=<rational>]",
            max_order: Some(WALLIS_POWER_COEFFS),
        },
        EntryInfo {
            id: "wallis_ratio",
            parameters: "[s=<rational>,t=<rational>]",
            max_order: Some(WALLIS_RATIO_COEFFS),
        },
    ]
}
