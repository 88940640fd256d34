//! Multiprecision scalars and Chebyshev-basis polynomials.

mod cheb;
mod real;

pub use cheb::{cheb_eval, cheb_interpolate, chebyshev_nodes, odd_lift, ChebPoly, OddPoly};
pub use real::{precision_for, Real};

/// Default number of guard bits added by [`precision_for`].
pub const DEFAULT_GUARD_BITS: u32 = 64;
