//! Exact arithmetic for truncated asymptotic series and integral means.
//!
//! The crate implements three layers:
//!
//! * [`coeffield`] — multivariate polynomials and rational functions over
//!   arbitrary-precision rationals, with canonical forms suitable for
//!   byte-stable printing.
//! * [`series`] — truncated asymptotic series `b·log x + x^u Σ aₙ x⁻ⁿ`
//!   with exact coefficient arithmetic, powers, logarithms and JSON
//!   serialization; [`solver`] inverts compositions `B(A(x)) = C(x)` on such
//!   series, and [`intmean`] expands integral means `I_f(x+s, x+t)`.
//! * [`catalog`] + [`verify`] — a library of named expandable functions
//!   (powers, logarithm, digamma, polygamma, Wallis quotients) and interval
//!   oracles that check truncated expansions against high-precision values.
//!
//! All symbolic computation is exact; floating point never enters. Numeric
//! verification uses rational interval arithmetic with directed rounding.

pub mod catalog;
pub mod coeffield;
mod error;
pub mod intmean;
pub mod series;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
