//! LaTeX rendering: descending powers of `x`, `\frac` for rationals,
//! primed Greek letters for the auxiliary symbols.

use num::{BigRational, One, Signed, Zero};

use super::AsymptoticSeries;
use crate::coeffield::{Coefficient, Polynomial, SymbolId};

fn sym_latex(name: &str) -> String {
    match name {
        "alpha" => r"\alpha".into(),
        "beta" => r"\beta".into(),
        "gamma" => r"\gamma".into(),
        "ap" => r"\alpha'".into(),
        "bp" => r"\beta'".into(),
        "gp" => r"\gamma'".into(),
        other => other.into(),
    }
}

/// One monomial: `\alpha^{2}\beta`.
fn mono_latex(p: &Polynomial, m: &crate::coeffield::Monomial) -> String {
    let mut out = String::new();
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let s = sym_latex(p.table.name(SymbolId(i as u32)));
        if e == 1 {
            out.push_str(&s);
        } else {
            out.push_str(&format!("{s}^{{{e}}}"));
        }
    }
    out
}

/// Signed term list of a polynomial, each entry rendered without sign.
fn poly_terms(p: &Polynomial) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    for (m, c) in p.iter_terms().collect::<Vec<_>>().into_iter().rev() {
        let neg = c.is_negative();
        let mag = c.abs();
        let mono = mono_latex(p, m);
        let body = if mag.denom().is_one() {
            let n = mag.numer();
            if n.is_one() && !mono.is_empty() {
                mono.clone()
            } else {
                format!("{n}{mono}")
            }
        } else if mono.is_empty() {
            format!(r"\frac{{{}}}{{{}}}", mag.numer(), mag.denom())
        } else {
            let n = mag.numer();
            let top = if n.is_one() {
                mono.clone()
            } else {
                format!("{n}{mono}")
            };
            format!(r"\frac{{{top}}}{{{}}}", mag.denom())
        };
        out.push((neg, body));
    }
    out
}

fn join_terms(terms: Vec<(bool, String)>) -> String {
    let mut out = String::new();
    for (neg, body) in terms {
        if out.is_empty() {
            if neg {
                out.push('-');
            }
            out.push_str(&body);
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&body);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn poly_latex(p: &Polynomial) -> String {
    join_terms(poly_terms(p))
}

/// Full coefficient; multi-term values are not parenthesized here, the
/// caller decides based on context.
fn coeff_latex(c: &Coefficient) -> String {
    if c.is_polynomial() {
        poly_latex(c.numerator())
    } else {
        format!(
            r"\frac{{{}}}{{{}}}",
            poly_latex(c.numerator()),
            poly_latex(c.denominator())
        )
    }
}

/// True when the rendered coefficient is a single product (no `+`/`-`
/// joins at top level), so it can prefix a power without parentheses.
fn is_atomic(c: &Coefficient) -> bool {
    !c.is_polynomial() || c.numerator().num_terms() <= 1
}

fn exponent_latex(s: &AsymptoticSeries, n: usize) -> Option<String> {
    let e = s
        .exponent()
        .add_rational(&-BigRational::from_integer(n.into()));
    if let Some(q) = e.as_rational() {
        if q.is_zero() {
            return None;
        }
        if q.is_one() {
            return Some("x".into());
        }
        return Some(format!("x^{{{q}}}"));
    }
    let lin = e.to_coefficient(s.table());
    Some(format!("x^{{{}}}", poly_latex(lin.numerator())))
}

/// Render a term `c·pow` as (sign, body).
fn term_latex(c: &Coefficient, pow: Option<String>) -> (bool, String) {
    let Some(pow) = pow else {
        let terms = poly_terms_of(c);
        if terms.len() == 1 {
            return terms.into_iter().next().unwrap();
        }
        return (false, coeff_latex(c));
    };
    if c.is_one() {
        return (false, pow);
    }
    if (-c).is_one() {
        return (true, pow);
    }
    if is_atomic(c) {
        let terms = poly_terms_of(c);
        if terms.len() == 1 {
            let (neg, body) = terms.into_iter().next().unwrap();
            return (neg, format!("{body}{pow}"));
        }
        return (false, format!("{}{pow}", coeff_latex(c)));
    }
    (
        false,
        format!(r"\left({}\right){pow}", coeff_latex(c)),
    )
}

/// Term list for polynomial coefficients, single pseudo-term otherwise.
fn poly_terms_of(c: &Coefficient) -> Vec<(bool, String)> {
    if c.is_polynomial() {
        poly_terms(c.numerator())
    } else {
        vec![(false, coeff_latex(c))]
    }
}

pub fn to_latex(s: &AsymptoticSeries) -> String {
    let mut terms: Vec<(bool, String)> = Vec::new();
    if !s.log_coeff().is_zero() {
        terms.push(term_latex(s.log_coeff(), Some(r"\log x".into())));
    }
    for (n, c) in s.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        terms.push(term_latex(c, exponent_latex(s, n)));
    }
    join_terms(terms)
}

#[cfg(test)]
mod tests {
    use super::super::tests_support::{coeff, ser, table};
    use super::*;
    use crate::series::Exponent;

    #[test]
    fn paper_style_terms() {
        let s = ser(1, &["1", "alpha", "0", "-1/6*beta^2"], false);
        assert_eq!(to_latex(&s), r"x + \alpha - \frac{\beta^{2}}{6}x^{-2}");
    }

    #[test]
    fn log_series_latex() {
        let t = table();
        let s = AsymptoticSeries::new(
            &t,
            Coefficient::one(&t),
            Exponent::from_integer(-1),
            vec![coeff("-1/2"), coeff("-1/12")],
            false,
        );
        assert_eq!(
            to_latex(&s),
            r"\log x - \frac{1}{2}x^{-1} - \frac{1}{12}x^{-2}"
        );
    }

    #[test]
    fn primes_and_parens() {
        let t = table();
        let gp = t.id("gp").unwrap();
        let s = AsymptoticSeries::from_coeffs(
            &t,
            Exponent::symbol(gp),
            vec![coeff("1"), coeff("ap*gp"), coeff("bp + 1")],
            false,
        );
        assert_eq!(
            to_latex(&s),
            r"x^{\gamma'} + \alpha'\gamma'x^{\gamma' - 1} + \left(\beta' + 1\right)x^{\gamma' - 2}"
        );
    }

    use crate::series::AsymptoticSeries;
}
