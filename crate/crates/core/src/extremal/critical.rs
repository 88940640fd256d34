use serde::Serialize;

use crate::error::Result;
use crate::remez::{cosine_grid, SignPolyResult};
use crate::scalar::{ChebPoly, Real};

/// An extremum whose value misses `±L`.
#[derive(Clone, Debug, Serialize)]
pub struct CriticalViolation {
    pub index: usize,
    pub x: Real,
    /// `(p(x) - 1 - expected)/L`.
    pub relative_error: Real,
}

/// Critical points of `p` on `[a, 1]` and the values there.
#[derive(Clone, Debug, Serialize)]
pub struct CriticalReport {
    /// Zeros of `p'` in `(a, 1)`, increasing.
    pub critical_points: Vec<Real>,
    /// `p(x) - 1` at `a`, each critical point, and 1.
    pub critical_values: Vec<Real>,
    pub alternation_ok: bool,
    /// Extrema of `p - sgn` on `[-1, -a] ∪ [a, 1]`.
    pub count_on_x: usize,
    pub violations: Vec<CriticalViolation>,
}

fn bisect_root(r: &ChebPoly, dr: &ChebPoly, mut lo: Real, mut hi: Real) -> Real {
    let prec = lo.prec();
    let s_lo = (r.eval(&lo) + &lo * dr.eval(&lo) * 2.0).signum_i32();
    for _ in 0..(prec + 8) {
        let mid = (&lo + &hi) / 2.0;
        if mid <= lo || mid >= hi {
            break;
        }
        let s = (r.eval(&mid) + &mid * dr.eval(&mid) * 2.0).signum_i32();
        if s == 0 {
            return mid;
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (&lo + &hi) / 2.0
}

/// Finds the zeros of `p'` on `(a, 1)` and checks that `p - 1` takes the
/// values `-L, +L, -L, ...` at `a`, at those zeros, and at 1, each to
/// within `tol L`.
pub fn verify_critical_values(result: &SignPolyResult, tol: f64) -> Result<CriticalReport> {
    let prec = result.prec();
    let q = result.p.base();
    let dq = q.derivative();
    let a = result.a.with_prec(prec);
    let one = Real::one(prec);
    let a2 = a.sqr();
    // p'(x) = r(x^2) with r(y) = q(y) + 2 y q'(y)
    let r_at = |y: &Real| q.eval(y) + y * dq.eval(y) * 2.0;
    let ys = cosine_grid(&a2, &one, (64 * result.m).max(64));
    let vals: Vec<i32> = ys.iter().map(|y| r_at(y).signum_i32()).collect();
    let mut roots = Vec::new();
    for j in 0..ys.len() - 1 {
        let (s0, s1) = (vals[j], vals[j + 1]);
        if s1 == 0 && j + 1 < ys.len() - 1 {
            roots.push(ys[j + 1].clone());
        } else if s0 != 0 && s1 != 0 && s0 != s1 {
            roots.push(bisect_root(q, &dq, ys[j].clone(), ys[j + 1].clone()));
        }
    }
    let critical_points: Vec<Real> = roots.iter().map(Real::sqrt).collect();
    let mut points = vec![a.clone()];
    points.extend(critical_points.iter().cloned());
    points.push(one.clone());
    let critical_values: Vec<Real> = points.iter().map(|x| result.p.eval(x) - 1.0).collect();
    let mut violations = Vec::new();
    for (k, (x, v)) in points.iter().zip(&critical_values).enumerate() {
        let expected = if k % 2 == 0 {
            -result.l.clone()
        } else {
            result.l.clone()
        };
        let rel = (v - &expected) / &result.l;
        if rel.abs() > tol {
            violations.push(CriticalViolation {
                index: k,
                x: x.clone(),
                relative_error: rel,
            });
        }
    }
    let alternation_ok = violations.is_empty() && points.len() == result.m + 2;
    Ok(CriticalReport {
        count_on_x: 2 * points.len(),
        critical_points,
        critical_values,
        alternation_ok,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::remez::{solve_sign_poly, SignOptions};
    use crate::scalar::odd_lift;

    fn solve(a: f64, m: usize) -> SignPolyResult {
        solve_sign_poly(&Real::from_f64(a, 53), m, &SignOptions::default()).unwrap()
    }

    #[test]
    fn degree_nine_extremes() {
        let res = solve(0.1, 4);
        let rep = verify_critical_values(&res, 1e-9).unwrap();
        assert!(rep.alternation_ok, "{:?}", rep.violations);
        assert_eq!(rep.critical_points.len(), 4);
        assert_eq!(rep.count_on_x, 12);
        // the critical points agree with the exchange reference
        for (c, r) in rep.critical_points.iter().zip(&res.alternants[1..]) {
            assert!((c - r).abs().to_f64() < 1e-6);
        }
    }

    #[test]
    fn linear_case_has_no_interior_extremes() {
        let res = solve(0.5, 0);
        let rep = verify_critical_values(&res, 1e-12).unwrap();
        assert!(rep.critical_points.is_empty());
        assert_eq!(rep.count_on_x, 4);
        assert!(rep.alternation_ok);
    }

    #[test]
    fn perturbed_coefficients_fail() {
        let mut res = solve(0.2, 3);
        let bump = vec![Real::zero(res.prec()), &res.l * 0.3];
        res.p = odd_lift(&res.p.base().perturbed(&bump), &res.a).unwrap();
        let rep = verify_critical_values(&res, 1e-6).unwrap();
        assert!(!rep.alternation_ok);
        assert!(!rep.violations.is_empty());
    }
}
