//! Numerical integral geometry engine.
//!
//! Deterministic Gram-determinant calculus and Grassmannian charts ([`geom`]),
//! invariant-measure samplers ([`randgeo`]), a registry of test functions
//! ([`fields`]), Monte-Carlo evaluators for the k-plane transform and its
//! multilinear relatives ([`transforms`]), Lorentz-space numerics
//! ([`lorentz`]), and a per-claim verification harness ([`verify`]).

pub mod error;
pub mod fields;
pub mod geom;
pub mod lorentz;
pub mod randgeo;
pub mod transforms;
pub mod verify;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
