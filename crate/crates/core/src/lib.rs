//! Best uniform polynomial approximation of `sgn(x)` on `[-1, -a] ∪ [a, 1]`.
//!
//! The crate computes the extremal odd polynomials with a multiprecision
//! Remez exchange, certifies them through their equioscillation and cosine
//! representation, builds the half-plane conformal maps that govern the
//! asymptotics of the error, and compares solver output with the closed-form
//! asymptotic laws.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod conformal;
pub mod error;
pub mod extremal;
pub mod remez;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;
