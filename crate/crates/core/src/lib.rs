//! Covering numbers of intersecting families of subspaces over finite fields.
//!
//! The crate builds GF(q), canonical subspaces of GF(q)^n, exact counts of
//! subspaces, the extremal families with covering number equal to their
//! member dimension, and exhaustive searches that confirm their optimality
//! at small parameters.

pub mod certificate;
pub mod cli;
pub mod error;
pub mod family;
pub mod gf;
pub mod io;
pub mod matrix;
pub mod maxsearch;
pub mod qcount;
pub mod singular;
pub mod subspace;

pub use error::{Error, Result};
pub use gf::{field_make, Field, FieldElement};
pub use matrix::Matrix;
pub use subspace::Subspace;
