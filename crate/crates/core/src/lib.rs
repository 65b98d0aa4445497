//! Exact models of charged free fermion, charged free boson, and neutral
//! fermion Fock spaces, their row operators, and the correlation functions
//! they generate, with cross-verified computation routes throughout.

pub mod bch;
pub mod correlators;
pub mod fock;
pub mod partition;
pub mod qism;
pub mod rowops;
pub mod symmetric;
pub mod verify;
