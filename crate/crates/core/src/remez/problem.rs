use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{ChebPoly, Real};

/// Scalar function on multiprecision reals.
pub type ScalarFn = Arc<dyn Fn(&Real) -> Real + Send + Sync>;

/// Weighted uniform approximation problem: minimize
/// `sup_[lo, hi] w(x) |q(x) - g(x)|` over polynomials `q` of degree `degree`.
#[derive(Clone)]
pub struct ApproxProblem {
    lo: Real,
    hi: Real,
    weight: ScalarFn,
    target: ScalarFn,
    degree: usize,
}

impl fmt::Debug for ApproxProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ApproxProblem")
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .field("degree", &self.degree)
            .finish_non_exhaustive()
    }
}

impl ApproxProblem {
    /// Checks `lo < hi`, and that `w > 0` and `g` is finite on a sample of the
    /// interval.
    pub fn new(
        lo: Real,
        hi: Real,
        weight: ScalarFn,
        target: ScalarFn,
        degree: usize,
    ) -> Result<ApproxProblem> {
        if !(lo < hi) {
            return Err(Error::Domain(format!(
                "empty interval [{}, {}]",
                lo.to_f64(),
                hi.to_f64()
            )));
        }
        let problem = ApproxProblem {
            lo,
            hi,
            weight,
            target,
            degree,
        };
        for i in 0..=16 {
            let x = problem.lerp(i as f64 / 16.0);
            let w = (problem.weight)(&x);
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::Domain(format!(
                    "weight not positive at x = {}",
                    x.to_f64()
                )));
            }
            if !(problem.target)(&x).is_finite() {
                return Err(Error::Domain(format!(
                    "target not finite at x = {}",
                    x.to_f64()
                )));
            }
        }
        Ok(problem)
    }

    /// `sup_[a^2, 1] sqrt(x) |q(x) - 1/sqrt(x)|`, the one-interval form of the
    /// odd sign approximation problem on `[-1, -a] ∪ [a, 1]`.
    pub fn sign_weighted(a: &Real, m: usize) -> Result<ApproxProblem> {
        check_unit_open(a)?;
        let p = a.prec();
        ApproxProblem::new(
            a.sqr(),
            Real::one(p),
            Arc::new(|x: &Real| x.sqrt()),
            Arc::new(|x: &Real| Real::one(x.prec()) / x.sqrt()),
            m,
        )
    }

    /// Unweighted approximation of `1/sqrt(x)` on `[a^2, 1]`.
    pub fn bernstein(a: &Real, m: usize) -> Result<ApproxProblem> {
        check_unit_open(a)?;
        let p = a.prec();
        ApproxProblem::new(
            a.sqr(),
            Real::one(p),
            Arc::new(|x: &Real| Real::one(x.prec())),
            Arc::new(|x: &Real| Real::one(x.prec()) / x.sqrt()),
            m,
        )
    }

    pub fn lo(&self) -> &Real {
        &self.lo
    }

    pub fn hi(&self) -> &Real {
        &self.hi
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    pub fn weight(&self, x: &Real) -> Real {
        (self.weight)(x)
    }

    pub fn target(&self, x: &Real) -> Real {
        (self.target)(x)
    }

    /// Weighted residual `w(x) (q(x) - g(x))`.
    pub fn residual(&self, q: &ChebPoly, x: &Real) -> Real {
        self.weight(x) * (q.eval(x) - self.target(x))
    }

    /// `lo + t (hi - lo)`.
    pub fn lerp(&self, t: f64) -> Real {
        &self.lo + (&self.hi - &self.lo) * t
    }

    /// `n` points clustered toward both ends like Chebyshev extrema,
    /// endpoints included.
    pub fn cosine_grid(&self, n: usize) -> Vec<Real> {
        cosine_grid(&self.lo, &self.hi, n)
    }
}

pub(crate) fn check_unit_open(a: &Real) -> Result<()> {
    if a > &0.0 && a < &1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "a = {} must lie in (0, 1)",
            a.to_f64()
        )))
    }
}

/// `x_j = mid - half cos(pi j/(n - 1))`, `j = 0..n`.
pub fn cosine_grid(lo: &Real, hi: &Real, n: usize) -> Vec<Real> {
    let n = n.max(2);
    let p = lo.prec().max(hi.prec());
    let pi = Real::pi(p);
    let mid = (lo + hi) * 0.5;
    let half = (hi - lo) * 0.5;
    let mut pts: Vec<Real> = (0..n)
        .map(|j| {
            let theta = &pi * j as f64 / (n - 1) as f64;
            &mid - &half * theta.cos()
        })
        .collect();
    pts[0] = lo.clone();
    pts[n - 1] = hi.clone();
    pts
}
