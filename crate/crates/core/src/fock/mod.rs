//! The three Fock spaces: charged fermion pair (b, c) in its charge-zero
//! sector, charged bosons, and neutral fermions.
//!
//! Each space provides:
//! - a basis-state representation with polynomial coefficients,
//! - a word engine that normal-orders raw operator products from the
//!   defining relations alone,
//! - a bilinear pairing between bra and ket states.
//!
//! The word engines are the ground truth: partition-indexed rules elsewhere
//! in the crate are always cross-checked against them.

pub mod bc;
pub mod bc_words;
pub mod boson;
pub mod neutral;

use fock_exact::{MultiPoly, Rational};
use num_traits::One;
use thiserror::Error;

/// Errors shared by the Fock-space operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FockError {
    /// A pairing received two kets or two bras.
    #[error("pairing requires one bra and one ket state")]
    FlagMismatch,
}

/// Minimal vector-space interface the exponential driver needs.
pub trait LinearState: Clone {
    fn add(&self, other: &Self) -> Self;
    fn scale_rat(&self, c: &Rational) -> Self;
    fn is_zero(&self) -> bool;
}

/// exp(A) applied to a state, for operators A that strictly raise the degree
/// being truncated: the caller's `op` must already include any truncation,
/// and the loop stops when a power of A truncates to zero.
pub fn apply_exp_operator<S: LinearState>(state: &S, op: impl Fn(&S) -> S) -> S {
    let mut acc = state.clone();
    let mut term = state.clone();
    let mut k: u64 = 0;
    loop {
        k += 1;
        term = op(&term).scale_rat(&(Rational::one() / Rational::from_integer(k.into())));
        if term.is_zero() {
            return acc;
        }
        acc = acc.add(&term);
    }
}

/// Drop every term whose degree in the given variables exceeds `cap`.
pub fn truncate_degree_where(
    p: &MultiPoly,
    pred: impl Fn(fock_exact::Var) -> bool + Copy,
    cap: u32,
) -> MultiPoly {
    p.retain_terms(|m| m.degree_where(pred) <= cap)
}
