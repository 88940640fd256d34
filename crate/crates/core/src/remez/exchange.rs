use serde::Serialize;

use super::linalg::solve_dense;
use super::problem::ApproxProblem;
use super::search::{golden_iterations, golden_max};
use crate::error::{Error, Result};
use crate::scalar::{ChebPoly, Real};

/// Knobs for [`solve_weighted_minimax`].
#[derive(Clone, Debug)]
pub struct RemezOptions {
    /// Relative tolerance on the levelled-error spread.
    pub tol: f64,
    pub max_iter: usize,
    /// Coarse search grid has `grid_density * (m + 2)` points.
    pub grid_density: usize,
    /// Starting reference; Chebyshev extrema of the interval when absent.
    pub initial_reference: Option<Vec<Real>>,
}

impl Default for RemezOptions {
    fn default() -> Self {
        RemezOptions {
            tol: 1e-12,
            max_iter: 100,
            grid_density: 32,
            initial_reference: None,
        }
    }
}

/// Alternation points together with the sign of the residual at each.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReferenceSet {
    points: Vec<Real>,
    signs: Vec<i8>,
}

impl ReferenceSet {
    /// Requires strictly increasing points and strictly alternating signs.
    pub fn new(points: Vec<Real>, signs: Vec<i8>) -> Result<ReferenceSet> {
        if points.len() != signs.len() {
            return Err(Error::Exchange("point/sign count mismatch".into()));
        }
        if let Some(i) = (1..points.len()).find(|&i| !(points[i - 1] < points[i])) {
            return Err(Error::Exchange(format!(
                "reference not strictly increasing at index {i} (x = {})",
                points[i].to_f64()
            )));
        }
        if signs.iter().any(|s| s.abs() != 1) || signs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Exchange("reference signs do not alternate".into()));
        }
        Ok(ReferenceSet { points, signs })
    }

    pub fn points(&self) -> &[Real] {
        &self.points
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Converged weighted minimax approximation.
#[derive(Clone, Debug)]
pub struct MinimaxResult {
    pub problem: ApproxProblem,
    pub q: ChebPoly,
    /// Minimax error: the levelled error of the final reference.
    pub l: Real,
    pub reference: ReferenceSet,
    /// `(max - min)/max` of `|residual|` over the reference.
    pub dvp_gap: Real,
    /// Largest `|residual|` found by the refined grid search.
    pub grid_max: Real,
    pub iterations: usize,
}

impl MinimaxResult {
    pub fn residual(&self, x: &Real) -> Real {
        self.problem.residual(&self.q, x)
    }
}

/// Extremum of the residual located by the grid search.
#[derive(Clone, Debug)]
pub(crate) struct Extremum {
    pub x: Real,
    pub e: Real,
}

impl Extremum {
    fn sign(&self) -> i8 {
        if self.e.is_sign_negative() {
            -1
        } else {
            1
        }
    }
}

/// Chebyshev extrema of `[lo, hi]`: `count` points including both ends.
fn initial_reference(problem: &ApproxProblem, count: usize) -> Vec<Real> {
    problem.cosine_grid(count)
}

/// Levelled solution on `reference`: `w_i (q(x_i) - g_i) = (-1)^i lambda`.
pub(crate) fn level(problem: &ApproxProblem, reference: &[Real]) -> Result<(ChebPoly, Real)> {
    let m = problem.degree();
    let n = m + 2;
    debug_assert_eq!(reference.len(), n);
    let p = problem.prec();
    let (lo, hi) = (problem.lo(), problem.hi());
    let width = hi - lo;
    let mut rows = Vec::with_capacity(n);
    let mut rhs = Vec::with_capacity(n);
    for (i, x) in reference.iter().enumerate() {
        let s = (x * 2.0 - lo - hi) / &width;
        let mut row = Vec::with_capacity(n);
        let mut t_prev = Real::one(p);
        let mut t_cur = s.clone();
        for k in 0..=m {
            match k {
                0 => row.push(Real::one(p)),
                1 => row.push(s.clone()),
                _ => {
                    let next = &s * &t_cur * 2.0 - &t_prev;
                    t_prev = std::mem::replace(&mut t_cur, next.clone());
                    row.push(next);
                }
            }
        }
        let inv_w = Real::one(p) / problem.weight(x);
        row.push(if i % 2 == 0 { -inv_w } else { inv_w });
        rows.push(row);
        rhs.push(problem.target(x));
    }
    let mut sol = solve_dense(rows, rhs)?;
    let lambda = sol.pop().expect("n >= 2 unknowns");
    let q = ChebPoly::new(lo.clone(), hi.clone(), sol)?;
    Ok((q, lambda))
}

/// All local extrema of the residual, ordered by `x`, each refined by
/// golden-section search inside its grid bracket.
pub(crate) fn find_extrema(
    problem: &ApproxProblem,
    q: &ChebPoly,
    grid_points: usize,
    tol: f64,
) -> Vec<Extremum> {
    let grid = problem.cosine_grid(grid_points);
    let vals: Vec<Real> = grid.iter().map(|x| problem.residual(q, x)).collect();
    let iters = golden_iterations(tol);
    let last = grid.len() - 1;
    let mut out = Vec::new();
    for j in 0..=last {
        let s = if vals[j].is_sign_negative() {
            -1.0
        } else {
            1.0
        };
        let here = &vals[j] * s;
        let left_ok = j == 0 || here >= &vals[j - 1] * s;
        let right_ok = j == last || here >= &vals[j + 1] * s;
        if !(left_ok && right_ok) {
            continue;
        }
        let a = if j == 0 { &grid[0] } else { &grid[j - 1] };
        let b = if j == last { &grid[last] } else { &grid[j + 1] };
        let f = |x: &Real| problem.residual(q, x) * s;
        let (xr, fr) = golden_max(f, a, b, iters);
        let best = if fr > here {
            Extremum { x: xr, e: fr * s }
        } else {
            Extremum {
                x: grid[j].clone(),
                e: vals[j].clone(),
            }
        };
        out.push(best);
    }
    out
}

/// Picks `n` alternating extrema, keeping the subsequence whose smallest
/// `|residual|` is largest.
pub(crate) fn select_alternating(cands: Vec<Extremum>, n: usize) -> Result<Vec<Extremum>> {
    let mut merged: Vec<Extremum> = Vec::with_capacity(cands.len());
    for c in cands {
        match merged.last_mut() {
            Some(prev) if prev.sign() == c.sign() => {
                if c.e.abs() > prev.e.abs() {
                    *prev = c;
                }
            }
            Some(prev) if prev.x == c.x => {
                if c.e.abs() > prev.e.abs() {
                    *prev = c;
                }
            }
            _ => merged.push(c),
        }
    }
    while merged.len() > n {
        let k = (0..merged.len())
            .min_by(|&i, &j| {
                merged[i]
                    .e
                    .abs()
                    .partial_cmp(&merged[j].e.abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("non-empty");
        let last = merged.len() - 1;
        if merged.len() - n == 1 {
            if merged[0].e.abs() < merged[last].e.abs() {
                merged.remove(0);
            } else {
                merged.pop();
            }
        } else if k == 0 || k == last {
            merged.remove(k);
        } else {
            merged.remove(k);
            // neighbours k-1 and k (formerly k+1) now share a sign
            if merged[k - 1].e.abs() < merged[k].e.abs() {
                merged.remove(k - 1);
            } else {
                merged.remove(k);
            }
        }
    }
    if merged.len() < n {
        return Err(Error::Exchange(format!(
            "only {} alternating extrema found, {} required",
            merged.len(),
            n
        )));
    }
    Ok(merged)
}

/// Weighted minimax approximation by multi-point Remez exchange.
///
/// Each step levels the residual on the current reference, locates every
/// local extremum of the residual on a cosine-spaced grid refined by
/// golden-section search, and replaces the whole reference by the best
/// alternating subset. Stops when the spread of `|residual|` over the new
/// reference and the excess of the grid maximum over the levelled error are
/// both below `tol` (relative).
pub fn solve_weighted_minimax(
    problem: &ApproxProblem,
    opts: &RemezOptions,
) -> Result<MinimaxResult> {
    if !(opts.tol > 0.0) {
        return Err(Error::Domain(format!(
            "tol = {} must be positive",
            opts.tol
        )));
    }
    let m = problem.degree();
    let n = m + 2;
    let p = problem.prec();
    let grid_points = (opts.grid_density * n).max(64);
    let mut reference = match &opts.initial_reference {
        Some(r) if r.len() == n => r.iter().map(|x| x.with_prec(p)).collect(),
        Some(r) => {
            return Err(Error::Exchange(format!(
                "initial reference has {} points, {} required",
                r.len(),
                n
            )))
        }
        None => initial_reference(problem, n),
    };
    // Relative size of rounding noise: residuals below this are exact zeros.
    let noise = Real::one(p).ulp_scale(24);
    let mut last_gap = f64::INFINITY;
    for iter in 1..=opts.max_iter {
        if let Some(i) = (1..n).find(|&i| !(reference[i - 1] < reference[i])) {
            return Err(Error::Exchange(format!(
                "degenerate reference: points {} and {} coincide near x = {}",
                i - 1,
                i,
                reference[i].to_f64()
            )));
        }
        let (q, lambda) = level(problem, &reference)?;
        let lam_abs = lambda.abs();
        let cands = find_extrema(problem, &q, grid_points, opts.tol);
        let max_abs = cands
            .iter()
            .map(|c| c.e.abs())
            .fold(Real::zero(p), Real::max_of);
        let scale = problem.target(problem.lo()).abs() * problem.weight(problem.lo());
        if max_abs <= &scale * &noise {
            // The target lies in the approximating class.
            let signs = (0..n).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
            return Ok(MinimaxResult {
                problem: problem.clone(),
                q,
                l: Real::zero(p),
                reference: ReferenceSet::new(reference, signs)?,
                dvp_gap: Real::zero(p),
                grid_max: max_abs,
                iterations: iter,
            });
        }
        let chosen = select_alternating(cands, n)?;
        let min_abs = chosen
            .iter()
            .map(|c| c.e.abs())
            .fold(max_abs.clone(), Real::min_of);
        let gap = (&max_abs - &min_abs) / &max_abs;
        let excess = (&max_abs - &lam_abs) / &max_abs;
        last_gap = gap.to_f64().max(excess.to_f64());
        let points: Vec<Real> = chosen.iter().map(|c| c.x.clone()).collect();
        if gap.to_f64() <= opts.tol && excess.to_f64() <= opts.tol {
            let signs = chosen.iter().map(Extremum::sign).collect();
            return Ok(MinimaxResult {
                problem: problem.clone(),
                q,
                l: lam_abs,
                reference: ReferenceSet::new(points, signs)?,
                dvp_gap: gap,
                grid_max: max_abs,
                iterations: iter,
            });
        }
        reference = points;
    }
    Err(Error::IterationLimit {
        iterations: opts.max_iter,
        last_gap,
    })
}
