//! Exact arithmetic kernel: arbitrary-precision rationals, sparse multivariate
//! polynomials over a fixed indexed variable alphabet, total-degree truncated
//! power series, and fraction-free determinants.
//!
//! Everything here is exact; no floating point appears anywhere in the crate.

pub mod det;
pub mod laurent;
pub mod poly;
pub mod rational;
pub mod series;

pub use det::{det_bareiss, det_cofactor, poly_det};
pub use laurent::Laurent;
pub use poly::{Monomial, MultiPoly, Var};
pub use rational::{factorial, pow2, rat, ratio, Rational};
pub use series::{exp_truncated, series_inverse, TruncatedSeries};

use thiserror::Error;

/// Errors raised by the exact arithmetic kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    /// Series inversion requires a unit (nonzero) constant term.
    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,
    /// Determinants are defined for square matrices only.
    #[error("matrix is not square: {rows} rows, {cols} cols in row {row}")]
    NonSquare { rows: usize, cols: usize, row: usize },
    /// Truncated exponentials require the argument to have no constant term.
    #[error("exponential argument has a nonzero constant term")]
    NonNilpotentConstant,
}
