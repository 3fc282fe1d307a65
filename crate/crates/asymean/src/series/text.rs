//! Plain-text rendering of series: `x + alpha - 1/6*beta^2*x^-1`.

use std::fmt;

use num::{One, Zero};

use super::{AsymptoticSeries, Exponent};
use crate::coeffield::Coefficient;

fn power_string(s: &AsymptoticSeries, e: &Exponent) -> Option<String> {
    if let Some(q) = e.as_rational() {
        if q.is_zero() {
            return None;
        }
        if q.is_one() {
            return Some("x".into());
        }
        if q.is_integer() {
            return Some(format!("x^{q}"));
        }
        return Some(format!("x^({q})"));
    }
    let lin = e.to_coefficient(s.table());
    Some(format!("x^({lin})"))
}

fn is_single_term(c: &Coefficient) -> bool {
    c.is_polynomial() && c.numerator().num_terms() == 1
}

/// Combine a coefficient with an optional power factor.
fn term_string(c: &Coefficient, pow: Option<String>) -> String {
    let Some(pow) = pow else {
        return c.to_string();
    };
    if c.is_one() {
        return pow;
    }
    if (-c).is_one() {
        return format!("-{pow}");
    }
    if is_single_term(c) || !c.is_polynomial() {
        // single monomial or a (num)/(den) quotient: both self-delimiting
        format!("{c}*{pow}")
    } else {
        format!("({c})*{pow}")
    }
}

fn join(parts: Vec<String>) -> String {
    let mut out = String::new();
    for p in parts {
        if out.is_empty() {
            out = p;
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&p);
        }
    }
    out
}

impl fmt::Display for AsymptoticSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.log_coeff().is_zero() {
            parts.push(term_string(self.log_coeff(), Some("log(x)".into())));
        }
        for (n, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self
                .exponent()
                .add_rational(&-num::BigRational::from_integer(n.into()));
            parts.push(term_string(c, power_string(self, &e)));
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", join(parts))
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests_support::{coeff, ser, table};
    use crate::coeffield::Coefficient;
    use crate::series::{AsymptoticSeries, Exponent};

    #[test]
    fn renders_mean_style() {
        let s = ser(1, &["1", "alpha", "0", "-1/6*beta^2"], false);
        assert_eq!(s.to_string(), "x + alpha - 1/6*beta^2*x^-2");
    }

    #[test]
    fn renders_log_and_fractions() {
        let t = table();
        let s = AsymptoticSeries::new(
            &t,
            Coefficient::one(&t),
            Exponent::from_integer(-1),
            vec![coeff("-1/2"), coeff("-1/12")],
            false,
        );
        assert_eq!(s.to_string(), "log(x) - 1/2*x^-1 - 1/12*x^-2");
    }

    #[test]
    fn renders_edge_cases() {
        let z = ser(0, &["0"], false);
        assert_eq!(z.to_string(), "0");
        let s = ser(0, &["1", "-1"], false);
        assert_eq!(s.to_string(), "1 - x^-1");
        let m = ser(2, &["alpha + 1"], false);
        assert_eq!(m.to_string(), "(alpha + 1)*x^2");
        let f = ser(0, &["1", "(r - 1)/(r + 1)"], false);
        assert_eq!(f.to_string(), "1 + (r - 1)/(r + 1)*x^-1");
    }

    #[test]
    fn renders_symbolic_exponent() {
        let t = table();
        let gp = t.id("gp").unwrap();
        let s = AsymptoticSeries::from_coeffs(
            &t,
            Exponent::symbol(gp),
            vec![coeff("1"), coeff("alpha*gp")],
            false,
        );
        assert_eq!(s.to_string(), "x^(gp) + alpha*gp*x^(gp - 1)");
    }

    #[test]
    fn renders_fractional_exponent() {
        let t = table();
        let s = AsymptoticSeries::from_coeffs(
            &t,
            Exponent::rational(num::BigRational::new(1.into(), 2.into())),
            vec![coeff("1"), coeff("2")],
            false,
        );
        assert_eq!(s.to_string(), "x^(1/2) + 2*x^(-1/2)");
    }
}
