//! Weighted minimax approximation by Remez exchange, the odd sign problem
//! built on it, an independent linear-programming oracle, and two-sided
//! error certificates.

mod certify;
mod direct;
mod exchange;
mod linalg;
mod problem;
mod search;

pub(crate) use search::golden_max;
mod sign;

pub use certify::{certify, Certificate};
pub use direct::solve_sign_direct;
pub use exchange::{solve_weighted_minimax, MinimaxResult, ReferenceSet, RemezOptions};
pub use problem::{cosine_grid, ApproxProblem, ScalarFn};
pub use sign::{alternation_count, solve_bernstein, solve_sign_poly, SignOptions, SignPolyResult};
