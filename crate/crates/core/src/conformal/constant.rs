use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use super::curve::BoundaryCurve;
use super::map::{interp, solve_halfplane_map, HalfPlaneMap};
use super::mesh::MeshSpec;
use crate::error::{Error, Result};

/// `(1/2) log(2π)`.
pub const C_EXACT: f64 = 0.918_938_533_204_672_8;

/// `∫_a^b ρ(t)/t dt` with `ρ` linear in `sqrt(t)` between the end values.
fn panel_sqrt(a: f64, b: f64, ra: f64, rb: f64) -> f64 {
    let (sa, sb) = (a.sqrt(), b.sqrt());
    let beta = (rb - ra) / (sb - sa);
    let alpha = ra - beta * sa;
    let log_part = if a == 0.0 { 0.0 } else { alpha * (b / a).ln() };
    log_part + 2.0 * beta * (sb - sa)
}

/// `∫_a^b ρ(t)/t dt` with `ρ` linear in `t`, `a > 0`.
fn panel_linear(a: f64, b: f64, ra: f64, rb: f64) -> f64 {
    let s = (rb - ra) / (b - a);
    s * (b - a) + (ra - s * a) * (b / a).ln()
}

/// `∫_0^∞ (ρ(t) - (π/2) χ_{[2,∞)}(t)) dt/t` for samples of `ρ` on `t >= 0`
/// (first node 0) that reach `π/2` at the last node.
pub(crate) fn c_quadrature(t: &[f64], rho: &[f64]) -> f64 {
    let mut pts: Vec<(f64, f64)> = t.iter().copied().zip(rho.iter().copied()).collect();
    if !t.contains(&2.0) && t[t.len() - 1] > 2.0 {
        pts.push((2.0, interp(t, rho, 2.0)));
        pts.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite"));
    }
    let mut total = 0.0;
    for w in pts.windows(2) {
        let ((a, mut ra), (b, mut rb)) = (w[0], w[1]);
        if a >= 2.0 {
            ra -= FRAC_PI_2;
            rb -= FRAC_PI_2;
        }
        total += if a == 0.0 {
            panel_sqrt(a, b, ra, rb)
        } else {
            panel_linear(a, b, ra, rb)
        };
    }
    total
}

/// `c = (1/π) ∫_0^∞ (Im H(t) - (π/2) χ_{[2,∞)}(t)) dt/t` for the map onto
/// the region above `arccos(e^{-x})` with `σ = 1`.
///
/// The panel at `t = 0` takes `ρ ∝ sqrt(t)`, the behaviour at the corner
/// preimage; the other panels use the mesh's linear interpolant. The tail
/// beyond the mesh contributes nothing.
pub fn compute_c(map: &HalfPlaneMap, quad_tol: f64) -> Result<f64> {
    if map.curve != BoundaryCurve::OmegaStar || map.sigma != 1.0 {
        return Err(Error::Precondition(
            "compute_c needs the sigma = 1 map above arccos(e^-x)".into(),
        ));
    }
    if !(map.info.residual <= quad_tol / 10.0) {
        return Err(Error::Precondition(format!(
            "map residual {:e} exceeds quad_tol/10 = {:e}",
            map.info.residual,
            quad_tol / 10.0
        )));
    }
    let d = &map.density;
    let start = d.grid.partition_point(|&t| t < 0.0);
    if d.grid.get(start) != Some(&0.0) {
        return Err(Error::Precondition(
            "mesh must contain the node t = 0".into(),
        ));
    }
    Ok(c_quadrature(&d.grid[start..], &d.rho[start..]) / PI)
}

/// Estimate of `c` with a mesh-doubling error estimate.
#[derive(Clone, Debug, Serialize)]
pub struct ConstantReport {
    pub c: f64,
    pub c_doubled: f64,
    pub error_estimate: f64,
    pub target: f64,
    pub nodes: usize,
    pub nodes_doubled: usize,
    pub residual: f64,
    pub iterations: usize,
}

/// Solves the map on `mesh` and on the doubled mesh and evaluates
/// [`compute_c`] on both.
pub fn constant_report(mesh: &MeshSpec, tol: f64) -> Result<ConstantReport> {
    let quad_tol = 10.0 * tol;
    let coarse = solve_halfplane_map(&BoundaryCurve::OmegaStar, 1.0, mesh, tol)?;
    let fine = solve_halfplane_map(&BoundaryCurve::OmegaStar, 1.0, &mesh.doubled(), tol)?;
    let c = compute_c(&coarse, quad_tol)?;
    let c_doubled = compute_c(&fine, quad_tol)?;
    Ok(ConstantReport {
        c,
        c_doubled,
        error_estimate: (c - c_doubled).abs(),
        target: C_EXACT,
        nodes: coarse.info.nodes,
        nodes_doubled: fine.info.nodes,
        residual: coarse.info.residual.max(fine.info.residual),
        iterations: coarse.info.iterations.max(fine.info.iterations),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_constant() {
        assert!((C_EXACT - 0.5 * (2.0 * PI).ln()).abs() < 1e-15);
    }

    #[test]
    fn sqrt_model_integral() {
        // ∫_0^1 sqrt(t) dt/t = 2, on the default graded mesh restricted to [0, 1]
        let t: Vec<f64> = MeshSpec::omega_star_default()
            .nodes()
            .into_iter()
            .filter(|&t| (0.0..=1.0).contains(&t))
            .collect();
        let rho: Vec<f64> = t.iter().map(|t| t.sqrt()).collect();
        let v = c_quadrature(&t, &rho);
        assert!((v - 2.0).abs() < 1e-3, "{v}");
    }

    #[test]
    fn linear_panels() {
        // ∫_1^3 (t + 1)/t dt = 2 + log 3
        let v = panel_linear(1.0, 3.0, 2.0, 4.0);
        assert!((v - (2.0 + 3f64.ln())).abs() < 1e-14);
    }

    #[test]
    fn rejects_wrong_maps() {
        let mesh = MeshSpec::uniform(0.1, -40.0, 40.0).refine_at(0.0);
        let flat = solve_halfplane_map(&BoundaryCurve::Flat, 1.0, &mesh, 1e-10).unwrap();
        assert!(matches!(
            compute_c(&flat, 1e-3),
            Err(Error::Precondition(_))
        ));
        let star = solve_halfplane_map(&BoundaryCurve::OmegaStar, 1.0, &mesh, 1e-4).unwrap();
        assert!(matches!(
            compute_c(&star, 1e-6),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn coarse_mesh_estimate() {
        let mesh = MeshSpec::uniform(0.1, -40.0, 40.0)
            .refine_at(0.0)
            .with_node(2.0);
        let map = solve_halfplane_map(&BoundaryCurve::OmegaStar, 1.0, &mesh, 1e-11).unwrap();
        let c = compute_c(&map, 1e-6).unwrap();
        assert!((c - C_EXACT).abs() < 1e-2, "{c}");
    }
}
