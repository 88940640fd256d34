use num_complex::Complex64;
use serde::Serialize;

use super::constant::C_EXACT;
use super::curve::BoundaryCurve;
use super::map::{eval_map, solve_pinned, HalfPlaneMap};
use super::mesh::MeshSpec;
use crate::error::{Error, Result};

/// Mesh and iteration settings for [`solve_entire`].
#[derive(Clone, Debug)]
pub struct EntireOptions {
    pub h: f64,
    /// Mesh extends to `±(B + tail)`.
    pub tail: f64,
    pub tol: f64,
}

impl Default for EntireOptions {
    fn default() -> Self {
        EntireOptions {
            h: 0.05,
            tail: 40.0,
            tol: 1e-10,
        }
    }
}

/// Map `h` onto the region above `arccos(cosh B / cosh x)` with `h(0) = 0`,
/// `h(z) ~ z`, and the preimage `A` of the corner `B`.
#[derive(Clone, Debug, Serialize)]
pub struct EntireSolution {
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "A")]
    pub a: f64,
    /// `1/cosh B`.
    #[serde(rename = "L")]
    pub l: f64,
    #[serde(skip)]
    pub map: HalfPlaneMap,
}

impl EntireSolution {
    /// `φ(x) = Im h(i sqrt(x^2 - A^2))`, the real boundary values of the map
    /// of the first quadrant sending `A` to 0, for `x >= A`.
    pub fn phi(&self, x: f64) -> Result<f64> {
        if !(x >= self.a) {
            return Err(Error::Domain(format!("x = {x} lies below A = {}", self.a)));
        }
        let s = ((x - self.a) * (x + self.a)).sqrt();
        if s == 0.0 {
            return Ok(0.0);
        }
        Ok(eval_map(&self.map, Complex64::new(0.0, s))?.im)
    }
}

/// Root of `A + log(A)/2 + c = B`.
pub(crate) fn asymptotic_a(b: f64) -> f64 {
    let f = |a: f64| a + 0.5 * a.ln() + C_EXACT - b;
    let (mut lo, mut hi) = (1e-12, b.max(1.0));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Solves the map for the curve `arccos(cosh B / cosh x)` and locates `A`.
///
/// The mesh is graded at `±t_c`, `t_c` the root of `t + log(t)/2 + c = B`,
/// and the corner is pinned to `t_c` while `σ` floats; rescaling to
/// `h(z) ~ z` moves the corner preimage to `A = σ t_c`.
pub fn solve_entire(b: f64, opts: &EntireOptions) -> Result<EntireSolution> {
    if !(b >= 1.0) || !b.is_finite() {
        return Err(Error::Domain(format!("B = {b} must be at least 1")));
    }
    let curve = BoundaryCurve::Entire { b };
    let span = b + opts.tail;
    let t_c = asymptotic_a(b);
    let mesh = MeshSpec::uniform(opts.h, -span, span)
        .refine_at(-t_c)
        .refine_at(t_c);
    let map = solve_pinned(&curve, &mesh, t_c, b, opts.tol)?;
    let a = t_c * map.info.mesh.h / opts.h;
    Ok(EntireSolution {
        b,
        a,
        l: 1.0 / b.cosh(),
        map,
    })
}

/// `A(B)`: the corner preimage for the map with `h(0) = 0`, `h(z) ~ z`.
pub fn entire_a_of_b(b: f64, tol: f64) -> Result<f64> {
    let opts = EntireOptions {
        tol,
        ..EntireOptions::default()
    };
    Ok(solve_entire(b, &opts)?.a)
}
