//! Decides whether two complex matrices, each with a single Jordan block per
//! eigenvalue, are unitarily similar, and produces the similarity when they are.
//!
//! Two matrices are reduced to Schur form with a shared eigenvalue order. Each
//! Schur form is then mapped, by diagonal unitary similarities, onto a finite
//! family of canonical members parametrized by branch vectors `m ∈ {0, ±1}^p`.
//! The matrices are unitarily similar exactly when the two families intersect,
//! and the intersecting members yield an explicit certificate `U` with
//! `B = U A U*`.

pub mod canonical;
pub mod cli;
pub mod error;
pub mod io;
pub mod linalg;
pub mod matrix;
pub mod oracle;
pub mod phase;
pub mod similarity;
pub mod stability;

pub use error::{Error, Result};
pub use matrix::{c64, ComplexMatrix};
