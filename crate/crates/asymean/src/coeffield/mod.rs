//! Exact coefficient arithmetic: multivariate polynomials over the
//! rationals, their fraction field, Bernoulli numbers, endpoint power
//! sums, and the text grammar for coefficient literals.

mod coefficient;
mod gcd;
mod numbers;
mod parse;
mod poly;

pub use coefficient::{binom, Coefficient};
pub use gcd::{div_exact, poly_gcd};
pub use numbers::{bernoulli, bernoulli_list, binomial_int, factorial, power_sum};
pub use parse::{parse_coefficient, parse_rational};
pub use poly::{Monomial, Polynomial, SymbolId, SymbolTable, STANDARD_SYMBOLS};
