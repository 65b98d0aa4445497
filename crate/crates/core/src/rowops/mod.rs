//! Row operators on the three Fock spaces.
//!
//! Every operator comes in independent realizations that are cross-checked
//! against each other on basis states:
//! - a combinatorial rule on labelled basis states (box-adding with explicit
//!   coefficients),
//! - a finite product of nilpotent exponential factors driven through the
//!   word engines,
//! - where available, an exponential of quadratic mode sums.

pub mod bc;
pub mod boson;
pub mod neutral;
pub mod tau;

use thiserror::Error;

/// Errors from row-operator application.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RowOpError {
    /// The input state has a part wider than the row bound M.
    #[error("state has a part of size {part} exceeding the bound M = {m}")]
    PartExceedsM { part: u32, m: u32 },
    /// An exponential factor expected to be nilpotent at linear order was not.
    #[error("exponential factor is not nilpotent at linear order")]
    NonNilpotentFactor,
}
