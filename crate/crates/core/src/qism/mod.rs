//! Lattice realizations of the row operators by the quantum inverse
//! scattering method.
//!
//! - [`lattice`]: occupation states for the phase and i-boson models, the
//!   L-matrix engine, monodromy entries with half powers of the spectral
//!   parameter cleared, and the maps onto partition-labelled Fock states.
//! - [`diagram`]: commutative-diagram checks between the lattice operators
//!   and the row operators.
//! - [`rll`]: RLL exchange relations for the monodromy matrices and the
//!   Yang-Baxter equation for the R-matrices.

use thiserror::Error;

pub mod diagram;
pub mod lattice;
pub mod rll;

/// Errors from the lattice engine.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum QismError {
    /// Creation pushed a site past the configured occupation cap.
    #[error("occupation exceeds the cap {cap} at site {site}")]
    OccupationOverflow { site: usize, cap: u32 },
    /// A dressed entry kept a genuine half power of the spectral parameter.
    #[error("spectral half powers failed to clear")]
    UnclearedHalfPowers,
}
