use serde::Serialize;

use super::exchange::{solve_weighted_minimax, MinimaxResult, RemezOptions};
use super::problem::{check_unit_open, cosine_grid, ApproxProblem};
use super::search::{golden_iterations, golden_max};
use crate::error::{Error, Result};
use crate::scalar::{odd_lift, precision_for, OddPoly, Real, DEFAULT_GUARD_BITS};

/// Options for the sign-problem drivers.
#[derive(Clone, Debug)]
pub struct SignOptions {
    pub tol: f64,
    pub guard_bits: u32,
    pub max_iter: usize,
}

impl Default for SignOptions {
    fn default() -> Self {
        SignOptions {
            tol: 1e-12,
            guard_bits: DEFAULT_GUARD_BITS,
            max_iter: 100,
        }
    }
}

impl SignOptions {
    /// Settings for asymptotic studies: `tol = 1e-20`, 128 guard bits.
    pub fn asymptotic() -> SignOptions {
        SignOptions {
            tol: 1e-20,
            guard_bits: 128,
            ..SignOptions::default()
        }
    }

    fn remez(&self) -> RemezOptions {
        RemezOptions {
            tol: self.tol,
            max_iter: self.max_iter,
            ..RemezOptions::default()
        }
    }
}

/// Best odd approximation of `sgn` on `[-1, -a] ∪ [a, 1]`.
#[derive(Clone, Debug, Serialize)]
pub struct SignPolyResult {
    pub a: Real,
    pub m: usize,
    pub p: OddPoly,
    #[serde(rename = "L")]
    pub l: Real,
    #[serde(rename = "B")]
    pub b: Real,
    /// Points of `[a, 1]` where `p - 1` attains `±L`, increasing.
    pub alternants: Vec<Real>,
    pub dvp_gap: Real,
    pub grid_max: Real,
    pub iterations: usize,
}

impl SignPolyResult {
    pub fn prec(&self) -> u32 {
        self.p.prec()
    }
}

fn working_a(a: &Real, m: usize, guard: u32) -> Result<Real> {
    check_unit_open(a)?;
    let prec = precision_for(a, m, guard)?;
    let a = a.with_prec(prec);
    // the search grid must resolve [a^2, 1]
    let width = Real::one(prec) - a.sqr();
    if width.to_f64() < 1e-12 {
        return Err(Error::Domain(format!(
            "a = {} leaves [a^2, 1] too narrow to resolve",
            a.to_f64()
        )));
    }
    Ok(a)
}

pub(crate) fn sign_result(a: &Real, m: usize, res: MinimaxResult) -> Result<SignPolyResult> {
    let p = odd_lift(&res.q, a)?;
    let l = res.l.clone();
    let b = if l.is_zero() {
        return Err(Error::Internal("zero error for the sign problem".into()));
    } else {
        (Real::one(l.prec()) / &l).acosh()
    };
    let alternants = res.reference.points().iter().map(Real::sqrt).collect();
    Ok(SignPolyResult {
        a: a.clone(),
        m,
        p,
        l,
        b,
        alternants,
        dvp_gap: res.dvp_gap,
        grid_max: res.grid_max,
        iterations: res.iterations,
    })
}

/// Solves the sign problem through the weighted one-interval form
/// `sup_[a^2, 1] sqrt(x) |q(x) - 1/sqrt(x)|` and lifts `q` to
/// `p(x) = x q(x^2)`. Precision comes from [`precision_for`].
pub fn solve_sign_poly(a: &Real, m: usize, opts: &SignOptions) -> Result<SignPolyResult> {
    let a = working_a(a, m, opts.guard_bits)?;
    let problem = ApproxProblem::sign_weighted(&a, m)?;
    let res = solve_weighted_minimax(&problem, &opts.remez())?;
    sign_result(&a, m, res)
}

/// Unweighted best approximation of `1/sqrt(x)` on `[a^2, 1]` by degree `m`.
pub fn solve_bernstein(a: &Real, m: usize, opts: &SignOptions) -> Result<MinimaxResult> {
    let a = working_a(a, m, opts.guard_bits)?;
    let problem = ApproxProblem::bernstein(&a, m)?;
    solve_weighted_minimax(&problem, &opts.remez())
}

/// Number of alternating extrema of `p - sgn` over `[-1, -a] ∪ [a, 1]` whose
/// magnitude is at least `l (1 - rel_tol)`.
///
/// Scans a cosine grid of `[a, 1]`, refines each local extremum of `p - 1`,
/// keeps those that reach the level, collapses runs of equal sign, and
/// doubles the count for the mirror half.
pub fn alternation_count(p: &OddPoly, l: &Real, rel_tol: f64, grid: usize) -> usize {
    let prec = p.prec();
    let a = p.a().with_prec(prec);
    let xs = cosine_grid(&a, &Real::one(prec), grid.max(16));
    let es: Vec<Real> = xs.iter().map(|x| p.eval(x) - 1.0).collect();
    let level = l * (1.0 - rel_tol);
    let iters = golden_iterations(rel_tol * rel_tol);
    let last = es.len() - 1;
    let mut signs: Vec<i32> = Vec::new();
    for j in 0..=last {
        let s = es[j].signum_i32();
        let sf = s as f64;
        let here = &es[j] * sf;
        let left_ok = j == 0 || here >= &es[j - 1] * sf;
        let right_ok = j == last || here >= &es[j + 1] * sf;
        if !(left_ok && right_ok) || s == 0 {
            continue;
        }
        let lo = &xs[j.saturating_sub(1)];
        let hi = &xs[(j + 1).min(last)];
        let (_, peak) = golden_max(|x: &Real| (p.eval(x) - 1.0) * sf, lo, hi, iters);
        if here.max_of(peak) >= level && signs.last() != Some(&s) {
            signs.push(s);
        }
    }
    2 * signs.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(v: f64) -> Real {
        Real::from_f64(v, 64)
    }

    #[test]
    fn linear_case_closed_form() {
        let res = solve_sign_poly(&a(0.5), 0, &SignOptions::default()).unwrap();
        let p = res.prec();
        let eps = Real::one(p).ulp_scale(16);
        assert!((&res.l - &Real::from_ratio(1, 3, p)).abs() < eps);
        let x = Real::from_f64(0.5, p);
        assert!((res.p.eval(&x) - Real::from_ratio(2, 3, p)).abs() < eps);
        let b_want = (Real::from_int(3, p) + Real::from_int(8, p).sqrt()).ln();
        assert!((&res.b - &b_want).abs() < eps);
        assert!((res.b.to_f64() - 1.7627).abs() < 1e-4);
        assert_eq!(res.alternants.len(), 2);
        assert_eq!(alternation_count(&res.p, &res.l, 1e-6, 200), 4);
    }

    #[test]
    fn a_point_nine_constant() {
        let res = solve_sign_poly(&a(0.9), 0, &SignOptions::default()).unwrap();
        let one = Real::one(res.prec());
        let want = (&one - &res.a) / (&one + &res.a);
        let rel = ((&res.l - &want) / &want).abs();
        assert!(rel < Real::one(res.prec()).ulp_scale(16));
    }

    #[test]
    fn degree_nine_has_twelve_extrema() {
        let res = solve_sign_poly(&a(0.1), 4, &SignOptions::default()).unwrap();
        assert_eq!(res.p.degree(), 9);
        assert_eq!(res.alternants.len(), 6);
        assert_eq!(alternation_count(&res.p, &res.l, 1e-6, 4000), 12);
        let cosh_b = res.b.cosh();
        let back = Real::one(res.prec()) / cosh_b;
        assert!(((&back - &res.l) / &res.l).abs() < Real::one(res.prec()).ulp_scale(24));
    }

    #[test]
    fn odd_symmetry_of_error() {
        let res = solve_sign_poly(&a(0.3), 3, &SignOptions::default()).unwrap();
        for x in [0.3, 0.45, 0.8, 1.0] {
            let x = Real::from_f64(x, res.prec());
            let right = res.p.eval(&x) - 1.0;
            let left = res.p.eval(&-x.clone()) + 1.0;
            assert_eq!(right.abs(), left.abs());
        }
    }

    #[test]
    fn bernstein_constant() {
        let res = solve_bernstein(&a(0.5), 0, &SignOptions::default()).unwrap();
        assert!((res.l.to_f64() - 0.5).abs() < 1e-15);
        assert!((res.q.coeffs()[0].to_f64() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_a_outside_unit_interval() {
        for bad in [0.0, 1.0, -0.2, 1.5] {
            let err = solve_sign_poly(&a(bad), 1, &SignOptions::default()).unwrap_err();
            assert!(matches!(err, Error::Domain(_)));
        }
    }
}
