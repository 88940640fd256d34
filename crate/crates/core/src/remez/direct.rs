use std::sync::Arc;

use super::exchange::{find_extrema, select_alternating, Extremum};
use super::problem::{check_unit_open, cosine_grid, ApproxProblem};
use super::sign::{SignOptions, SignPolyResult};
use crate::error::{Error, Result};
use crate::scalar::{cheb_interpolate, odd_lift, precision_for, ChebPoly, Real};

const MAX_ROUNDS: usize = 60;
const BLAND_AFTER: usize = 50;

/// Values `T_1(y), T_3(y), ..., T_{2m+1}(y)`.
fn odd_basis(y: &Real, m: usize) -> Vec<Real> {
    let mut out = Vec::with_capacity(m + 1);
    let mut t_prev = Real::one(y.prec());
    let mut t_cur = y.clone();
    for k in 1..=(2 * m + 1) {
        if k > 1 {
            let next = y * &t_cur * 2.0 - &t_prev;
            t_prev = std::mem::replace(&mut t_cur, next);
        }
        if k % 2 == 1 {
            out.push(t_cur.clone());
        }
    }
    out
}

fn eval_odd(coeffs: &[Real], y: &Real) -> Real {
    odd_basis(y, coeffs.len() - 1)
        .iter()
        .zip(coeffs)
        .fold(Real::zero(y.prec()), |acc, (t, c)| acc + t * c)
}

/// Dense simplex tableau for `max c.x` s.t. `A x = b`, `x >= 0`, `b >= 0`,
/// started from an all-artificial basis.
struct Tableau {
    rows: Vec<Vec<Real>>,
    rhs: Vec<Real>,
    basis: Vec<usize>,
    n_struct: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let piv = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = &*v / &piv;
        }
        self.rhs[r] = &self.rhs[r] / &piv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][c].clone();
            if f.is_zero() {
                continue;
            }
            for (v, pv) in self.rows[i].iter_mut().zip(&prow) {
                *v -= &f * pv;
            }
            self.rhs[i] = &self.rhs[i] - &f * &prhs;
        }
        self.basis[r] = c;
    }

    /// Reduced-cost row `z_j - c_j` for objective `cost` (artificials cost 0
    /// unless listed).
    fn reduced(&self, cost: &[Real]) -> Vec<Real> {
        let p = self.rhs[0].prec();
        let ncol = self.rows[0].len();
        (0..ncol)
            .map(|j| {
                let z = self
                    .basis
                    .iter()
                    .zip(&self.rows)
                    .fold(Real::zero(p), |acc, (&b, row)| acc + &cost[b] * &row[j]);
                z - &cost[j]
            })
            .collect()
    }

    /// Runs simplex iterations maximizing `cost` over columns `< allowed`.
    fn optimize(&mut self, cost: &[Real], allowed: usize, eps: &Real) -> Result<()> {
        let mut degenerate = 0usize;
        for _ in 0..100_000 {
            let red = self.reduced(cost);
            let bland = degenerate >= BLAND_AFTER;
            let mut enter: Option<usize> = None;
            for j in 0..allowed {
                if red[j] < -eps.clone() {
                    match enter {
                        None => enter = Some(j),
                        Some(k) if !bland && red[j] < red[k] => enter = Some(j),
                        _ => {}
                    }
                    if bland {
                        break;
                    }
                }
            }
            let Some(c) = enter else { return Ok(()) };
            let mut leave: Option<(usize, Real)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][c] > *eps {
                    let ratio = &self.rhs[i] / &self.rows[i][c];
                    let better = match &leave {
                        None => true,
                        Some((k, best)) => {
                            ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((r, ratio)) = leave else {
                return Err(Error::Internal("oracle program is unbounded".into()));
            };
            if ratio.is_zero() {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(r, c);
        }
        Err(Error::Internal("simplex did not terminate".into()))
    }
}

/// Discrete minimax over `ys`: returns odd-basis coefficients and the level.
fn lp_minimax(ys: &[Real], m: usize, prec: u32) -> Result<(Vec<Real>, Real)> {
    let n = ys.len();
    let k = m + 1;
    let n_rows = k + 1;
    let n_struct = 2 * n;
    let ncol = n_struct + n_rows;
    let mut rows = vec![vec![Real::zero(prec); ncol]; n_rows];
    // columns 0..n: v_j (p below 1), n..2n: u_j (p above 1)
    for (j, y) in ys.iter().enumerate() {
        for (r, t) in odd_basis(y, m).into_iter().enumerate() {
            rows[r][n + j] = -t.clone();
            rows[r][j] = t;
        }
        rows[k][j] = Real::one(prec);
        rows[k][n + j] = Real::one(prec);
    }
    for (r, row) in rows.iter_mut().enumerate() {
        row[n_struct + r] = Real::one(prec);
    }
    let mut rhs = vec![Real::zero(prec); n_rows];
    rhs[k] = Real::one(prec);
    let mut tab = Tableau {
        rows,
        rhs,
        basis: (n_struct..ncol).collect(),
        n_struct,
    };
    let eps = Real::one(prec).ulp_scale(32);
    // phase 1: maximize minus the sum of artificials
    let mut cost1 = vec![Real::zero(prec); ncol];
    for c in cost1.iter_mut().skip(n_struct) {
        *c = Real::from_int(-1, prec);
    }
    tab.optimize(&cost1, tab.n_struct, &eps)?;
    let infeas = tab
        .basis
        .iter()
        .zip(&tab.rhs)
        .filter(|(&b, _)| b >= n_struct)
        .fold(Real::zero(prec), |acc, (_, v)| acc + v.abs());
    if infeas > Real::one(prec).ulp_scale(48) {
        return Err(Error::Internal("oracle program is infeasible".into()));
    }
    // phase 2: maximize sum b_j (v_j - u_j) with b_j = 1
    let mut cost2 = vec![Real::zero(prec); ncol];
    for j in 0..n {
        cost2[j] = Real::one(prec);
        cost2[n + j] = Real::from_int(-1, prec);
    }
    tab.optimize(&cost2, n_struct, &eps)?;
    // simplex multipliers are the primal unknowns (c_0..c_m, t)
    let red = tab.reduced(&cost2);
    let mut y: Vec<Real> = red[n_struct..].to_vec();
    let t = y.pop().expect("level row");
    Ok((y, t))
}

/// Independent oracle for the sign problem: minimax over odd polynomials
/// `sum c_k T_{2k+1}(y)` directly on `[a, 1]`, by linear programming on a
/// grid of `200 (m + 2)` points refined with cutting planes at the residual
/// peaks until the discrete level and the continuous maximum agree to `tol`.
pub fn solve_sign_direct(a: &Real, m: usize, opts: &SignOptions) -> Result<SignPolyResult> {
    check_unit_open(a)?;
    if m > 8 {
        return Err(Error::Domain(format!("oracle supports m <= 8, got {m}")));
    }
    let prec = precision_for(a, m, opts.guard_bits)?;
    let a = a.with_prec(prec);
    let one = Real::one(prec);
    let mut ys = cosine_grid(&a, &one, 200 * (m + 2));
    let peak_problem = ApproxProblem::new(
        a.clone(),
        one.clone(),
        Arc::new(|x: &Real| Real::one(x.prec())),
        Arc::new(|x: &Real| Real::one(x.prec())),
        2 * m + 1,
    )?;
    let mut last_gap = f64::INFINITY;
    for round in 1..=MAX_ROUNDS {
        let (coeffs, level) = lp_minimax(&ys, m, prec)?;
        let pcheb = cheb_interpolate(|y| eval_odd(&coeffs, y), &a, &one, 2 * m + 1)?;
        let peaks = find_extrema(&peak_problem, &pcheb, 64 * (m + 2), opts.tol);
        let sup = peaks
            .iter()
            .map(|e| e.e.abs())
            .fold(Real::zero(prec), Real::max_of);
        let gap = ((&sup - &level) / &sup).to_f64();
        last_gap = gap;
        if gap <= opts.tol {
            return finish(&a, m, &coeffs, sup, peaks, round);
        }
        ys.extend(peaks.into_iter().map(|e| e.x));
        ys.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
        ys.dedup();
    }
    Err(Error::IterationLimit {
        iterations: MAX_ROUNDS,
        last_gap,
    })
}

fn finish(
    a: &Real,
    m: usize,
    coeffs: &[Real],
    l: Real,
    peaks: Vec<Extremum>,
    rounds: usize,
) -> Result<SignPolyResult> {
    let prec = a.prec();
    let q: ChebPoly = cheb_interpolate(
        |x| {
            let y = x.sqrt();
            eval_odd(coeffs, &y) / &y
        },
        &a.sqr(),
        &Real::one(prec),
        m,
    )?;
    let p = odd_lift(&q, a)?;
    let chosen = select_alternating(peaks, m + 2)?;
    let min_abs = chosen
        .iter()
        .map(|e| e.e.abs())
        .fold(l.clone(), Real::min_of);
    let dvp_gap = (&l - &min_abs) / &l;
    let b = (Real::one(prec) / &l).acosh();
    Ok(SignPolyResult {
        a: a.clone(),
        m,
        p,
        l: l.clone(),
        b,
        alternants: chosen.into_iter().map(|e| e.x).collect(),
        dvp_gap,
        grid_max: l,
        iterations: rounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::remez::solve_sign_poly;

    #[test]
    fn linear_case() {
        let res = solve_sign_direct(&Real::from_f64(0.5, 64), 0, &SignOptions::default()).unwrap();
        assert!((res.l.to_f64() - 1.0 / 3.0).abs() < 1e-12);
        let x = Real::from_f64(0.75, res.prec());
        assert!((res.p.eval(&x).to_f64() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn agrees_with_exchange() {
        for (a, m) in [(0.5, 1), (0.3, 2)] {
            let a = Real::from_f64(a, 64);
            let opts = SignOptions::default();
            let lp = solve_sign_direct(&a, m, &opts).unwrap();
            let rz = solve_sign_poly(&a, m, &opts).unwrap();
            let rel = ((&lp.l - &rz.l) / &rz.l).abs().to_f64();
            assert!(rel < 1e-8, "a = {}, m = {m}: {rel}", a.to_f64());
            assert_eq!(lp.alternants.len(), m + 2);
        }
    }

    #[test]
    fn rejects_large_degree() {
        let err = solve_sign_direct(&Real::from_f64(0.5, 64), 9, &SignOptions::default());
        assert!(matches!(err, Err(Error::Domain(_))));
    }
}
