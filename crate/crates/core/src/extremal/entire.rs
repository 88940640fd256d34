use std::f64::consts::PI;

use crate::conformal::EntireSolution;
use crate::error::{Error, Result};

/// `1 - L cos φ(x)` for `x >= A`: the limit profile of `p(x) - 1` near the
/// gap edge after rescaling.
pub fn entire_extremal_boundary(sol: &EntireSolution, x: f64) -> Result<f64> {
    if !(x >= sol.a) {
        return Err(Error::Domain(format!("x = {x} lies below A = {}", sol.a)));
    }
    Ok(1.0 - sol.l * sol.phi(x)?.cos())
}

/// Smallest `x > A` with `φ(x) = π`.
pub fn first_critical_point(sol: &EntireSolution) -> Result<f64> {
    let f = |x: f64| sol.phi(x).map(|v| v - PI);
    let mut lo = sol.a;
    let mut hi = sol.a + 1.0;
    while f(hi)? < 0.0 {
        lo = hi;
        hi += 1.0;
        if hi > sol.a + 100.0 {
            return Err(Error::NonConvergence {
                iterations: 100,
                diagnostic: "φ stays below π".into(),
            });
        }
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if f(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
