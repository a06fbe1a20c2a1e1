//! Affine geometric crystals of type A on products of basic crystals, their
//! realization inside the unipotent loop group via whirl matrices, the
//! birational R-matrix, loop (skew) Schur functions with the energy function,
//! and the asymptotic infinite-product crystal.
//!
//! All structural computations are exact over arbitrary-precision rationals;
//! only the asymptotic module works in floating point.

pub mod asymptotic;
pub mod crystal;
pub mod error;
pub mod loopsym;
pub mod poly;
pub mod rational;
pub mod rmatrix;
pub mod sample;
pub mod suites;
pub mod ucrystal;
pub mod whirl;

pub use error::{Error, Result};
pub use rational::Rat;
