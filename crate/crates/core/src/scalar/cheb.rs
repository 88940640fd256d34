use serde::{Deserialize, Serialize};

use super::Real;
use crate::error::{Error, Result};

/// Polynomial in the Chebyshev basis of an interval `[lo, hi]`:
/// `sum c_k T_k(s)` with `s = (2x - lo - hi)/(hi - lo)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ChebPolyRepr", into = "ChebPolyRepr")]
pub struct ChebPoly {
    lo: Real,
    hi: Real,
    coeffs: Vec<Real>,
}

#[derive(Serialize, Deserialize)]
struct ChebPolyRepr {
    interval: [Real; 2],
    coeffs: Vec<Real>,
}

impl From<ChebPoly> for ChebPolyRepr {
    fn from(p: ChebPoly) -> Self {
        ChebPolyRepr {
            interval: [p.lo, p.hi],
            coeffs: p.coeffs,
        }
    }
}

impl TryFrom<ChebPolyRepr> for ChebPoly {
    type Error = Error;
    fn try_from(r: ChebPolyRepr) -> Result<Self> {
        let [lo, hi] = r.interval;
        ChebPoly::new(lo, hi, r.coeffs)
    }
}

impl ChebPoly {
    /// Trailing coefficients that are exactly zero are dropped.
    pub fn new(lo: Real, hi: Real, mut coeffs: Vec<Real>) -> Result<ChebPoly> {
        if !(lo < hi) {
            return Err(Error::Domain(format!(
                "empty interval [{}, {}]",
                lo.to_f64(),
                hi.to_f64()
            )));
        }
        if coeffs.is_empty() {
            coeffs.push(Real::zero(lo.prec()));
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(Real::is_zero) {
            coeffs.pop();
        }
        Ok(ChebPoly { lo, hi, coeffs })
    }

    pub fn constant(value: Real, lo: Real, hi: Real) -> Result<ChebPoly> {
        ChebPoly::new(lo, hi, vec![value])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Real] {
        &self.coeffs
    }

    pub fn lo(&self) -> &Real {
        &self.lo
    }

    pub fn hi(&self) -> &Real {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.coeffs
            .iter()
            .map(Real::prec)
            .max()
            .unwrap_or(self.lo.prec())
    }

    /// Affine map of `x` onto `[-1, 1]`.
    pub fn to_unit(&self, x: &Real) -> Real {
        let two_x = x * 2.0;
        (two_x - &self.lo - &self.hi) / (&self.hi - &self.lo)
    }

    /// Clenshaw evaluation; extrapolates outside `[lo, hi]`.
    pub fn eval(&self, x: &Real) -> Real {
        let s = self.to_unit(x);
        clenshaw(&self.coeffs, &s)
    }

    /// Evaluation that refuses points outside the interval unless
    /// `extrapolate` is set.
    pub fn eval_checked(&self, x: &Real, extrapolate: bool) -> Result<Real> {
        if !extrapolate && (x < &self.lo || x > &self.hi) {
            return Err(Error::Domain(format!(
                "x = {} outside [{}, {}]",
                x.to_f64(),
                self.lo.to_f64(),
                self.hi.to_f64()
            )));
        }
        Ok(self.eval(x))
    }

    /// Derivative with respect to `x`, in the same basis.
    pub fn derivative(&self) -> ChebPoly {
        let n = self.degree();
        let p = self.prec();
        if n == 0 {
            return ChebPoly {
                lo: self.lo.clone(),
                hi: self.hi.clone(),
                coeffs: vec![Real::zero(p)],
            };
        }
        // d_{k-1} = d_{k+1} + 2k c_k, then halve d_0.
        let mut d = vec![Real::zero(p); n + 1];
        for k in (1..=n).rev() {
            let next = if k < n {
                d[k + 1].clone()
            } else {
                Real::zero(p)
            };
            d[k - 1] = next + &self.coeffs[k] * (2 * k) as f64;
        }
        d[0] = &d[0] * 0.5;
        d.truncate(n);
        let scale = Real::from_int(2, p) / (&self.hi - &self.lo);
        let coeffs = d.into_iter().map(|c| c * &scale).collect();
        ChebPoly::new(self.lo.clone(), self.hi.clone(), coeffs).expect("interval already validated")
    }

    /// Copy with coefficients perturbed: `c_k += delta_k`.
    pub fn perturbed(&self, deltas: &[Real]) -> ChebPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| match deltas.get(k) {
                Some(d) => c + d,
                None => c.clone(),
            })
            .collect();
        ChebPoly {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
            coeffs,
        }
    }
}

fn clenshaw(coeffs: &[Real], s: &Real) -> Real {
    let p = coeffs
        .iter()
        .map(Real::prec)
        .max()
        .unwrap_or(53)
        .max(s.prec());
    let two_s = s * 2.0;
    let mut b1 = Real::zero(p);
    let mut b2 = Real::zero(p);
    for c in coeffs.iter().skip(1).rev() {
        let b0 = &two_s * &b1 - &b2 + c;
        b2 = b1;
        b1 = b0;
    }
    s * &b1 - &b2 + &coeffs[0]
}

/// Evaluates `p` at `x`.
pub fn cheb_eval(p: &ChebPoly, x: &Real) -> Real {
    p.eval(x)
}

/// The `n + 1` Chebyshev points of the first kind on `[lo, hi]`, increasing.
pub fn chebyshev_nodes(lo: &Real, hi: &Real, n: usize) -> Vec<Real> {
    let p = lo.prec().max(hi.prec());
    let pi = Real::pi(p);
    let mid = (lo + hi) * 0.5;
    let half = (hi - lo) * 0.5;
    (0..=n)
        .rev()
        .map(|k| {
            let theta = &pi * (2 * k + 1) as f64 / (2 * (n + 1)) as f64;
            &mid + &half * theta.cos()
        })
        .collect()
}

/// Degree-`n` interpolant of `f` at the Chebyshev points of `[lo, hi]`.
pub fn cheb_interpolate<F>(f: F, lo: &Real, hi: &Real, n: usize) -> Result<ChebPoly>
where
    F: Fn(&Real) -> Real,
{
    let p = lo.prec().max(hi.prec());
    let pi = Real::pi(p);
    let mut coeffs = vec![Real::zero(p); n + 1];
    let mid = (lo + hi) * 0.5;
    let half = (hi - lo) * 0.5;
    for k in 0..=n {
        // theta_k = pi (k + 1/2)/(n + 1)
        let num = Real::from_int(2 * k as i64 + 1, p);
        let theta = &pi * &num / (2.0 * (n as f64 + 1.0));
        let s = theta.cos();
        let x = &mid + &half * &s;
        let fx = f(&x);
        if !fx.is_finite() {
            return Err(Error::Evaluation {
                node: x.to_string(),
                reason: "non-finite function value".into(),
            });
        }
        // T_j(s) by the three-term recurrence.
        let mut t_prev = Real::one(p);
        let mut t_cur = s.clone();
        for (j, c) in coeffs.iter_mut().enumerate() {
            let tj = match j {
                0 => Real::one(p),
                1 => s.clone(),
                _ => {
                    let next = &s * &t_cur * 2.0 - &t_prev;
                    t_prev = t_cur;
                    t_cur = next.clone();
                    next
                }
            };
            *c += &fx * &tj;
        }
    }
    let scale = Real::from_ratio(2, n as i64 + 1, p);
    for c in coeffs.iter_mut() {
        *c = &*c * &scale;
    }
    coeffs[0] = &coeffs[0] * 0.5;
    ChebPoly::new(lo.clone(), hi.clone(), coeffs)
}

/// Odd polynomial `p(x) = x q(x^2)` with `q` given on `[a^2, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OddPoly {
    base: ChebPoly,
    a: Real,
}

impl OddPoly {
    pub fn base(&self) -> &ChebPoly {
        &self.base
    }

    pub fn a(&self) -> &Real {
        &self.a
    }

    pub fn degree(&self) -> usize {
        2 * self.base.degree() + 1
    }

    pub fn prec(&self) -> u32 {
        self.base.prec()
    }

    pub fn eval(&self, x: &Real) -> Real {
        if x.is_zero() {
            return Real::zero(self.prec().max(x.prec()));
        }
        x * self.base.eval(&x.sqr())
    }

    /// `p'(x) = q(x^2) + 2 x^2 q'(x^2)`; `dq` must be `base().derivative()`.
    pub fn eval_derivative(&self, dq: &ChebPoly, x: &Real) -> Real {
        let x2 = x.sqr();
        self.base.eval(&x2) + &x2 * dq.eval(&x2) * 2.0
    }
}

/// Lifts `q` on `[a^2, 1]` to the odd polynomial `x q(x^2)`.
pub fn odd_lift(q: &ChebPoly, a: &Real) -> Result<OddPoly> {
    let a2 = a.sqr();
    let p = q.prec().max(a.prec());
    let slack = Real::one(p).ulp_scale(8);
    let lo_ok = (q.lo() - &a2).abs() <= slack;
    let hi_ok = (q.hi() - 1.0).abs() <= slack;
    if !lo_ok || !hi_ok {
        return Err(Error::Domain(format!(
            "base interval [{}, {}] is not [a^2, 1] = [{}, 1]",
            q.lo().to_f64(),
            q.hi().to_f64(),
            a2.to_f64()
        )));
    }
    Ok(OddPoly {
        base: q.clone(),
        a: a.clone(),
    })
}
