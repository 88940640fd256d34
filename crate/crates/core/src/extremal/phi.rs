use crate::error::{Error, Result};
use crate::remez::SignPolyResult;
use crate::scalar::Real;

/// `φ` on `[a, 1]` with `p = 1 - L cos φ`, unwrapped along the alternants.
#[derive(Clone, Debug)]
pub struct PhiTransform {
    source: SignPolyResult,
    /// Points where `|(1 - p)/L|` reaches 1, increasing; `φ = kπ` at the
    /// `k`-th one. First `a`, last 1.
    branch_log: Vec<Real>,
    /// Allowed excess of `|(1 - p)/L|` over 1: twice the relative excess of
    /// the grid maximum over `L`, plus a few ulps.
    slack: Real,
}

impl PhiTransform {
    pub fn new(result: &SignPolyResult) -> Result<PhiTransform> {
        let prec = result.prec();
        if !(result.l > 0.0) {
            return Err(Error::Domain(
                "the cosine representation needs L > 0".into(),
            ));
        }
        let a = result.a.with_prec(prec);
        let one = Real::one(prec);
        let mut branch_log = Vec::with_capacity(result.alternants.len() + 2);
        branch_log.push(a.clone());
        for x in &result.alternants {
            if x > &a && x < &one {
                branch_log.push(x.clone());
            }
        }
        branch_log.push(one);
        if branch_log.len() != result.m + 2 {
            return Err(Error::Precondition(format!(
                "expected {} alternants on [a, 1], found {}",
                result.m + 2,
                branch_log.len()
            )));
        }
        let excess = (&result.grid_max / &result.l - 1.0).max_of(Real::zero(prec));
        let slack = excess * 2.0 + Real::one(prec).ulp_scale(16);
        Ok(PhiTransform {
            source: result.clone(),
            branch_log,
            slack,
        })
    }

    pub fn source(&self) -> &SignPolyResult {
        &self.source
    }

    pub fn branch_log(&self) -> &[Real] {
        &self.branch_log
    }

    /// `φ(x)` for `x` in `[a, 1]`.
    pub fn eval(&self, x: &Real) -> Result<Real> {
        let prec = self.source.prec();
        let x = x.with_prec(prec);
        let first = &self.branch_log[0];
        let last = &self.branch_log[self.branch_log.len() - 1];
        if x < *first || x > *last {
            return Err(Error::Domain(format!(
                "x = {} lies outside [a, 1]",
                x.to_f64()
            )));
        }
        let k = self.branch_log[1..]
            .partition_point(|c| c <= &x)
            .min(self.branch_log.len() - 2);
        let ratio = (Real::one(prec) - self.source.p.eval(&x)) / &self.source.l;
        let one = Real::one(prec);
        if ratio.abs() > &one + &self.slack {
            return Err(Error::Representation {
                x: x.to_tagged(),
                ratio: ratio.abs().to_tagged(),
            });
        }
        let clamped = ratio.max_of(-one.clone()).min_of(one);
        let signed = if k % 2 == 0 { clamped } else { -clamped };
        let theta = signed.acos()?;
        Ok(Real::pi(prec) * k as f64 + theta)
    }

    /// `arccosh(1/L) = B`, the imaginary part of `φ` at the origin, after
    /// checking `(1 - p(0))/L = cosh B`.
    pub fn value_at_origin(&self) -> Result<Real> {
        let prec = self.source.prec();
        let zero = Real::zero(prec);
        let lhs = (Real::one(prec) - self.source.p.eval(&zero)) / &self.source.l;
        let rhs = self.source.b.cosh();
        if (&lhs - &rhs).abs() > rhs.ulp_scale(24) {
            return Err(Error::Representation {
                x: zero.to_tagged(),
                ratio: lhs.to_tagged(),
            });
        }
        Ok(self.source.b.clone())
    }
}

/// `φ(x)` with `p(x) = 1 - L cos φ(x)`, continuous and increasing on
/// `[a, 1]`, `φ(a) = 0`, `φ(1) = π(m + 1)`.
pub fn phi_from_poly(result: &SignPolyResult, x: &Real) -> Result<Real> {
    PhiTransform::new(result)?.eval(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::remez::{solve_sign_poly, SignOptions};

    fn solve(a: f64, m: usize) -> SignPolyResult {
        let opts = SignOptions {
            tol: 1e-30,
            guard_bits: 128,
            ..SignOptions::default()
        };
        solve_sign_poly(&Real::from_f64(a, 53), m, &opts).unwrap()
    }

    #[test]
    fn endpoints_and_linear_case() {
        let res = solve(0.5, 0);
        let prec = res.prec();
        let t = PhiTransform::new(&res).unwrap();
        // acos loses half the digits next to ±1
        let edge = Real::one(prec).ulp_scale(24).sqrt();
        assert!(t.eval(&res.a).unwrap().abs() < edge);
        let at_one = t.eval(&Real::one(prec)).unwrap();
        assert!((at_one - Real::pi(prec)).abs() < edge);
        let mid = t.eval(&Real::from_f64(0.75, prec)).unwrap();
        assert!((mid - Real::pi(prec) / 2.0).abs() < Real::one(prec).ulp_scale(24));
        assert!(t.eval(&Real::from_f64(0.4, prec)).is_err());
    }

    #[test]
    fn round_trip_and_monotone() {
        let res = solve(0.3, 5);
        let prec = res.prec();
        let t = PhiTransform::new(&res).unwrap();
        let slack = Real::one(prec).ulp_scale(24);
        let a = res.a.to_f64();
        let mut prev = Real::from_f64(-1.0, prec);
        for i in 0..=200 {
            let x = &res.a + Real::from_f64((1.0 - a) * i as f64 / 200.0, prec);
            let x = x.min_of(Real::one(prec));
            let phi = t.eval(&x).unwrap();
            let back = Real::one(prec) - &res.l * phi.cos();
            assert!((back - res.p.eval(&x)).abs() <= slack, "x = {}", x.to_f64());
            assert!(phi > prev);
            prev = phi;
        }
        let total = t.eval(&Real::one(prec)).unwrap();
        assert!((total - Real::pi(prec) * 6.0).abs() < slack.sqrt());
        let b = t.value_at_origin().unwrap();
        assert!((b.cosh() * &res.l - 1.0).abs() < slack);
    }

    #[test]
    fn perturbed_polynomial_violates_representation() {
        let mut res = solve(0.3, 3);
        let prec = res.prec();
        let shift: Vec<Real> = vec![res.l.clone() * 0.5];
        let q = res.p.base().perturbed(&shift);
        res.p = crate::scalar::odd_lift(&q, &res.a).unwrap();
        let t = PhiTransform::new(&res).unwrap();
        let errs = (0..100)
            .map(|i| Real::from_f64(0.3 + 0.7 * i as f64 / 99.0, prec).min_of(Real::one(prec)))
            .filter(|x| matches!(t.eval(x), Err(Error::Representation { .. })))
            .count();
        assert!(errs > 0);
    }
}
