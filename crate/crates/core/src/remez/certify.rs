use serde::Serialize;

use super::exchange::{find_extrema, MinimaxResult};
use crate::scalar::Real;

/// Two-sided bound `lower <= L_true <= upper` on the minimax error.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub lower: Real,
    pub upper: Real,
    pub gap: Real,
}

impl Certificate {
    /// `gap / upper`, or 0 when both bounds vanish.
    pub fn relative_gap(&self) -> Real {
        if self.upper.is_zero() {
            Real::zero(self.upper.prec())
        } else {
            &self.gap / &self.upper
        }
    }
}

/// Bounds the minimax error of `result.problem`.
///
/// The lower bound is the smallest `|residual|` over the reference when the
/// residual signs alternate there (de la Vallée Poussin) and 0 otherwise. The
/// upper bound is the largest `|residual|` on a cosine grid of
/// `grid_factor * (m + 2)` points with each local peak refined.
pub fn certify(result: &MinimaxResult, grid_factor: usize) -> Certificate {
    let problem = &result.problem;
    let p = problem.prec();
    let residuals: Vec<Real> = result
        .reference
        .points()
        .iter()
        .map(|x| problem.residual(&result.q, x))
        .collect();
    let alternates = residuals
        .windows(2)
        .all(|w| w[0].signum_i32() * w[1].signum_i32() < 0);
    let lower = if alternates {
        residuals
            .iter()
            .map(Real::abs)
            .reduce(Real::min_of)
            .unwrap_or_else(|| Real::zero(p))
    } else {
        Real::zero(p)
    };
    let n = (grid_factor.max(1) * (problem.degree() + 2)).max(64);
    let upper = find_extrema(problem, &result.q, n, 1e-30)
        .into_iter()
        .map(|e| e.e.abs())
        .fold(Real::zero(p), Real::max_of)
        .max_of(lower.clone());
    let gap = &upper - &lower;
    Certificate { lower, upper, gap }
}
