//! Exact lattice-point and characteristic-number identities for Delzant
//! polytopes, computed by equivariant localization and checked against
//! brute-force counts.

pub mod agw;
pub mod cli;
pub mod error;
pub mod exact;
pub mod invariants;
pub mod lattice;
pub mod localization;
pub mod polytope;
pub mod series;

pub use error::{Error, Result};
