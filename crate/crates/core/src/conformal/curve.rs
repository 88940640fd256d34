use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Boundary graph `y = C(x)` of a region `{y > C(x)}` in the plane.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundaryCurve {
    /// `C = 0`: the half-plane itself.
    Flat,
    /// `C(x) = arccos(e^{-x})` for `x >= 0`, `0` for `x < 0`.
    OmegaStar,
    /// `C(x) = arccos(cosh b / cosh x)` for `|x| >= b`, `0` for `|x| < b`.
    Entire { b: f64 },
}

/// `2 asin(sqrt(d/2))`, which is `arccos(1 - d)` without cancellation,
/// for `d` in `[0, 1]`.
fn acos_one_minus(d: f64) -> f64 {
    (2.0 * (0.5 * d.clamp(0.0, 1.0)).sqrt().asin()).min(FRAC_PI_2)
}

/// `(r, 1 - r)` for `r = cosh b / cosh x`, `x >= b >= 0`.
fn entire_ratio(b: f64, x: f64) -> (f64, f64) {
    let r = (b - x).exp() * (1.0 + (-2.0 * b).exp()) / (1.0 + (-2.0 * x).exp());
    if r < 0.5 {
        (r, 1.0 - r)
    } else {
        let one_minus = 2.0 * (0.5 * (x + b)).sinh() * (0.5 * (x - b)).sinh() / x.cosh();
        (r, one_minus)
    }
}

impl BoundaryCurve {
    /// Rejects curves outside the supported parameter range.
    pub fn validate(&self) -> Result<()> {
        match self {
            BoundaryCurve::Entire { b } if !(b.is_finite() && *b > 0.0) => {
                Err(Error::Domain(format!("B = {b} must be positive")))
            }
            _ => Ok(()),
        }
    }

    pub fn height(&self, x: f64) -> f64 {
        match *self {
            BoundaryCurve::Flat => 0.0,
            BoundaryCurve::OmegaStar => omega_star_height(x),
            BoundaryCurve::Entire { b } => {
                let ax = x.abs();
                if ax <= b {
                    0.0
                } else {
                    acos_one_minus(entire_ratio(b, ax).1)
                }
            }
        }
    }

    /// `C'(x)`; infinite at a square-root corner.
    pub fn slope(&self, x: f64) -> f64 {
        match *self {
            BoundaryCurve::Flat => 0.0,
            BoundaryCurve::OmegaStar => {
                if x <= 0.0 {
                    0.0
                } else {
                    1.0 / (2.0 * x).exp_m1().sqrt()
                }
            }
            BoundaryCurve::Entire { b } => {
                let ax = x.abs();
                if ax <= b {
                    return 0.0;
                }
                let (r, one_minus) = entire_ratio(b, ax);
                let d = r * ax.tanh() / (one_minus * (1.0 + r)).sqrt();
                d.copysign(x)
            }
        }
    }

    pub fn left_asymptote(&self) -> f64 {
        match self {
            BoundaryCurve::Entire { .. } => FRAC_PI_2,
            _ => 0.0,
        }
    }

    pub fn right_asymptote(&self) -> f64 {
        match self {
            BoundaryCurve::Flat => 0.0,
            _ => FRAC_PI_2,
        }
    }

    /// Abscissae where `C` is not smooth.
    pub fn corners(&self) -> Vec<f64> {
        match *self {
            BoundaryCurve::Flat => vec![],
            BoundaryCurve::OmegaStar => vec![0.0],
            BoundaryCurve::Entire { b } => vec![-b, b],
        }
    }

    pub fn is_even(&self) -> bool {
        !matches!(self, BoundaryCurve::OmegaStar)
    }

    /// Arc parameter `u = x + V(x)` with `V' = |C'|` and `V(0) = 0`.
    pub fn arc(&self, x: f64) -> f64 {
        match self {
            BoundaryCurve::Flat => x,
            BoundaryCurve::OmegaStar => x + self.height(x),
            BoundaryCurve::Entire { .. } => x + self.height(x).copysign(x),
        }
    }

    /// Boundary point `Γ(u) = (x, y)` and its derivative `(x', y')` in the
    /// arc parameter.
    pub(crate) fn at_arc(&self, u: f64) -> [f64; 4] {
        let x = self.invert_arc(u);
        let y = self.height(x);
        let d = self.slope(x);
        if d.is_infinite() {
            return [x, y, 0.0, d.signum()];
        }
        let g = 1.0 + d.abs();
        [x, y, 1.0 / g, d / g]
    }

    /// Solves `arc(x) = u` by bisection; `arc` is increasing with slope >= 1.
    pub(crate) fn invert_arc(&self, u: f64) -> f64 {
        let (lo, hi) = match *self {
            BoundaryCurve::Flat => return u,
            BoundaryCurve::OmegaStar => {
                if u <= 0.0 {
                    return u;
                }
                ((u - FRAC_PI_2).max(0.0), u)
            }
            BoundaryCurve::Entire { b } => {
                if u.abs() <= b {
                    return u;
                }
                let au = u.abs();
                let (lo, hi) = ((au - FRAC_PI_2).max(b), au);
                let x = bisect_arc(|x| x + self.height(x), au, lo, hi);
                return x.copysign(u);
            }
        };
        bisect_arc(|x| self.arc(x), u, lo, hi)
    }
}

fn bisect_arc<F: Fn(f64) -> f64>(f: F, u: f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > u {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `arccos(e^{-x})` for `x >= 0`, `0` otherwise.
pub fn omega_star_height(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        acos_one_minus(-(-x).exp_m1())
    }
}

/// Point `arccos(cosh b / cosh t) + i t` of the curve bounding the
/// extremal domain, for `t >= b`.
pub fn gamma_b(b: f64, t: f64) -> Result<Complex64> {
    if !(b > 0.0) || !(t >= b) {
        return Err(Error::Domain(format!(
            "gamma_b needs t >= B > 0 (B = {b}, t = {t}): cosh B/cosh t exceeds 1"
        )));
    }
    let re = BoundaryCurve::Entire { b }.height(t);
    Ok(Complex64::new(re, t))
}
