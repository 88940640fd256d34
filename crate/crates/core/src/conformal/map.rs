use std::f64::consts::PI;

use faer::linalg::solvers::Solve;
use faer::Mat;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::curve::BoundaryCurve;
use super::mesh::MeshSpec;
use crate::error::{Error, Result};

const MAX_NEWTON: usize = 60;
const GROWTH_LIMIT: usize = 10;

/// Boundary values `ρ(t) = Im H(t)` on a mesh, piecewise linear between
/// nodes and constant beyond the ends.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryDensity {
    pub grid: Vec<f64>,
    pub rho: Vec<f64>,
    pub tail_level_left: f64,
    pub tail_level_right: f64,
    pub tail_start_left: f64,
    pub tail_start_right: f64,
}

impl BoundaryDensity {
    /// `ρ(t)` by linear interpolation, tail levels outside the mesh.
    pub fn at(&self, t: f64) -> f64 {
        let g = &self.grid;
        if t < g[0] {
            return self.tail_level_left;
        }
        if t > g[g.len() - 1] {
            return self.tail_level_right;
        }
        interp(g, &self.rho, t)
    }

    /// Real part of the Schwarz integral of the density at real `x`
    /// (principal value), before subtracting the value at 0.
    fn pv_sum(&self, x: f64) -> f64 {
        let (g, r) = (&self.grid, &self.rho);
        let mut prev = ln_abs(g[0] - x);
        let mut acc = 0.0;
        for j in 0..g.len() - 1 {
            let next = ln_abs(g[j + 1] - x);
            let h = g[j + 1] - g[j];
            let ell = (r[j] * (g[j + 1] - x) + r[j + 1] * (x - g[j])) / h;
            acc += r[j + 1] - r[j] + ell * (next - prev);
            prev = next;
        }
        acc
    }

    fn complex_sum(&self, z: Complex64) -> Complex64 {
        let (g, r) = (&self.grid, &self.rho);
        let mut prev = (g[0] - z).ln();
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..g.len() - 1 {
            let next = (g[j + 1] - z).ln();
            let h = g[j + 1] - g[j];
            let slope = (r[j + 1] - r[j]) / h;
            let ell = r[j] + slope * (z - g[j]);
            acc += r[j + 1] - r[j] + ell * (next - prev);
            prev = next;
        }
        acc
    }

    fn tail_real(&self, x: f64) -> f64 {
        let (t0, t1) = (self.tail_start_left, self.tail_start_right);
        (self.tail_level_right * (t1.ln() - ln_abs(t1 - x))
            + self.tail_level_left * (ln_abs(t0 - x) - (-t0).ln()))
            / PI
    }

    fn tail_complex(&self, z: Complex64) -> Complex64 {
        let (t0, t1) = (self.tail_start_left, self.tail_start_right);
        let i_pi = Complex64::new(0.0, PI);
        (self.tail_level_right * (t1.ln() - (t1 - z).ln())
            + self.tail_level_left * ((t0 - z).ln() - (-t0).ln() + i_pi))
            / PI
    }
}

/// Convergence record of a boundary solve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveInfo {
    pub sigma: f64,
    pub mesh: MeshSpec,
    pub nodes: usize,
    pub tol: f64,
    pub iterations: usize,
    /// `sup_t |Re H(t) - x_t|` where `(x_t, ρ(t))` is the curve point
    /// matched to node `t`; bounds the distance of the image to the curve.
    pub residual: f64,
}

/// `H(z) = σ z + (1/π) ∫ (1/(t - z) - 1/t) ρ(t) dt`, normalized by
/// `H(0) = 0` and `H(z) ~ σ z`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HalfPlaneMap {
    pub sigma: f64,
    pub curve: BoundaryCurve,
    pub density: BoundaryDensity,
    /// Arc parameter of the image of each node along the curve.
    pub arc: Vec<f64>,
    pub info: SolveInfo,
    pv_origin: f64,
}

impl HalfPlaneMap {
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        eval_map(self, z)
    }

    /// `Re H(x)` for real `x`.
    pub fn boundary_re(&self, x: f64) -> f64 {
        let d = &self.density;
        self.sigma * x + (d.pv_sum(x) - self.pv_origin) / PI + d.tail_real(x)
    }

    /// Image points `Re H(t)` of the mesh nodes.
    pub fn boundary_images(&self) -> Vec<f64> {
        self.density
            .grid
            .iter()
            .map(|&t| self.boundary_re(t))
            .collect()
    }

    /// Largest `|ρ(t) - C(Re H(t))|` over the nodes.
    pub fn height_residual(&self) -> f64 {
        self.density
            .grid
            .iter()
            .zip(&self.density.rho)
            .map(|(&t, &r)| (r - self.curve.height(self.boundary_re(t))).abs())
            .fold(0.0, f64::max)
    }

    /// CSV rows `t, rho, curve_height_at_image, residual`.
    pub fn density_csv(&self) -> String {
        let mut out = String::from("t,rho,curve_height_at_image,residual\n");
        for (&t, &r) in self.density.grid.iter().zip(&self.density.rho) {
            let c = self.curve.height(self.boundary_re(t));
            out.push_str(&format!("{t:.17e},{r:.17e},{c:.17e},{:.3e}\n", r - c));
        }
        out
    }

    /// `{sigma, mesh, tol, iterations, residual}`.
    pub fn metadata_json(&self) -> serde_json::Value {
        serde_json::json!({
            "sigma": self.sigma,
            "mesh": self.info.mesh,
            "nodes": self.info.nodes,
            "tol": self.info.tol,
            "iterations": self.info.iterations,
            "residual": self.info.residual,
        })
    }
}

/// Evaluates the map at `z` with `Im z >= 0`; on the real axis the real part
/// is a principal value and the imaginary part is `ρ`.
pub fn eval_map(map: &HalfPlaneMap, z: Complex64) -> Result<Complex64> {
    if !(z.im >= 0.0) || !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("eval_map needs Im z >= 0, got {z}")));
    }
    if z.im == 0.0 {
        return Ok(Complex64::new(map.boundary_re(z.re), map.density.at(z.re)));
    }
    let d = &map.density;
    Ok(map.sigma * z + (d.complex_sum(z) - map.pv_origin) / PI + d.tail_complex(z))
}

pub(crate) fn ln_abs(d: f64) -> f64 {
    if d == 0.0 {
        0.0
    } else {
        d.abs().ln()
    }
}

pub(crate) fn interp(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let n = xs.len();
    if x <= xs[0] {
        return ys[0];
    }
    if x >= xs[n - 1] {
        return ys[n - 1];
    }
    let k = xs.partition_point(|&v| v <= x);
    let (x0, x1) = (xs[k - 1], xs[k]);
    let w = (x - x0) / (x1 - x0);
    ys[k - 1] * (1.0 - w) + ys[k] * w
}

/// PV weights: `PV ∫ ρ/(t - x) dt = sum_k w_k ρ_k` for piecewise linear `ρ`.
fn pv_weights(t: &[f64], x: f64, lg: &mut [f64], w: &mut [f64]) {
    for (l, &tk) in lg.iter_mut().zip(t) {
        *l = ln_abs(tk - x);
    }
    w.iter_mut().for_each(|v| *v = 0.0);
    for j in 0..t.len() - 1 {
        let h = t[j + 1] - t[j];
        let l = lg[j + 1] - lg[j];
        w[j] += -1.0 + (t[j + 1] - x) / h * l;
        w[j + 1] += 1.0 + (x - t[j]) / h * l;
    }
}

/// Discretized Schwarz operator on the nodes, with the value at 0 removed.
struct Operator {
    t: Vec<f64>,
    k: Mat<f64>,
    tails: Vec<f64>,
}

impl Operator {
    fn new(t: Vec<f64>, level_left: f64, level_right: f64) -> Operator {
        let n = t.len();
        let mut lg = vec![0.0; n];
        let mut w0 = vec![0.0; n];
        pv_weights(&t, 0.0, &mut lg, &mut w0);
        let mut w = vec![0.0; n];
        let mut k = Mat::<f64>::zeros(n, n);
        for i in 0..n {
            pv_weights(&t, t[i], &mut lg, &mut w);
            for j in 0..n {
                k[(i, j)] = (w[j] - w0[j]) / PI;
            }
        }
        let dens = BoundaryDensity {
            grid: t.clone(),
            rho: vec![0.0; n],
            tail_level_left: level_left,
            tail_level_right: level_right,
            tail_start_left: t[0],
            tail_start_right: t[n - 1],
        };
        let tails = t.iter().map(|&x| dens.tail_real(x)).collect();
        Operator { t, k, tails }
    }

    /// `Re H` at the nodes for density `y`.
    fn apply(&self, sigma: f64, y: &[f64]) -> Vec<f64> {
        let n = self.t.len();
        (0..n)
            .map(|i| {
                let base = sigma * self.t[i] + self.tails[i];
                y.iter()
                    .enumerate()
                    .fold(base, |acc, (j, v)| acc + self.k[(i, j)] * v)
            })
            .collect()
    }
}

struct State {
    pts: Vec<[f64; 4]>,
    r: Vec<f64>,
    norm: f64,
}

fn evaluate(curve: &BoundaryCurve, op: &Operator, sigma: f64, u: &[f64]) -> State {
    let pts: Vec<[f64; 4]> = u.iter().map(|&v| curve.at_arc(v)).collect();
    let y: Vec<f64> = pts.iter().map(|p| p[1]).collect();
    let re = op.apply(sigma, &y);
    let r: Vec<f64> = pts.iter().zip(&re).map(|(p, x)| p[0] - x).collect();
    let norm = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    State { pts, r, norm }
}

fn check_resolution(
    curve: &BoundaryCurve,
    sigma: f64,
    mesh: &MeshSpec,
    n: usize,
    tol: f64,
) -> Result<()> {
    if n < 16 {
        return Err(Error::Resolution(format!(
            "mesh has {n} nodes, at least 16 needed"
        )));
    }
    if sigma * mesh.h > 1.0 {
        return Err(Error::Resolution(format!(
            "image spacing sigma*h = {} exceeds 1",
            sigma * mesh.h
        )));
    }
    let right = (curve.height(sigma * mesh.hi) - curve.right_asymptote()).abs();
    let left = (curve.height(sigma * mesh.lo) - curve.left_asymptote()).abs();
    if right.max(left) > tol {
        return Err(Error::Resolution(format!(
            "tails start too early for tol {tol:e}: curve deviates from its asymptote by {:e}",
            right.max(left)
        )));
    }
    Ok(())
}

/// Conformal map of the upper half-plane onto `{y > C(x)}` with
/// `H(0) = 0`, `H(z) ~ σ z`.
///
/// The unknown is the arc parameter `u_t` of the image of each node along
/// the curve; Newton's method (with step halving) drives
/// `x(u_t) - Re H[y(u)](t)` to zero, where `Re H` is the principal-value
/// Schwarz integral of the piecewise linear density `y(u)` plus closed-form
/// contributions of the constant tails beyond the mesh. Stops when the sup
/// of that residual is at most `tol`.
pub fn solve_halfplane_map(
    curve: &BoundaryCurve,
    sigma: f64,
    mesh: &MeshSpec,
    tol: f64,
) -> Result<HalfPlaneMap> {
    curve.validate()?;
    mesh.validate()?;
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::Domain(format!("sigma = {sigma} must be positive")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tol = {tol} must be positive")));
    }
    let t = mesh.nodes();
    let n = t.len();
    check_resolution(curve, sigma, mesh, n, tol)?;
    let op = Operator::new(t.clone(), curve.left_asymptote(), curve.right_asymptote());
    let u: Vec<f64> = t.iter().map(|&x| sigma * x).collect();
    let (u, _, state, iterations) = newton(curve, &op, u, sigma, &Layout::plain(n), tol)?;
    Ok(assemble(curve, mesh, &op, u, sigma, state, iterations, tol))
}

/// Which arc parameters Newton's method moves and which residuals it
/// zeroes. Unknowns are `u[free[k]]`, then `σ` when `float_sigma`; with
/// `mirror`, `u[mirror[i]] = -u[i]` is kept for every free `i`.
struct Layout {
    free: Vec<usize>,
    rows: Vec<usize>,
    mirror: Option<Vec<usize>>,
    float_sigma: bool,
}

impl Layout {
    fn plain(n: usize) -> Layout {
        Layout {
            free: (0..n).collect(),
            rows: (0..n).collect(),
            mirror: None,
            float_sigma: false,
        }
    }

    fn unknowns(&self) -> usize {
        self.free.len() + usize::from(self.float_sigma)
    }

    /// `u` and `σ` after the step `dv` scaled by `step`.
    fn advance(&self, u: &[f64], sigma: f64, dv: &Mat<f64>, step: f64) -> (Vec<f64>, f64) {
        let mut v = u.to_vec();
        for (k, &i) in self.free.iter().enumerate() {
            v[i] += step * dv[(k, 0)];
            if let Some(m) = &self.mirror {
                v[m[i]] = -v[i];
            }
        }
        let s = if self.float_sigma {
            sigma + step * dv[(self.free.len(), 0)]
        } else {
            sigma
        };
        (v, s)
    }
}

/// Newton iteration with step halving on the residual `x(u_t) - Re H(t)`.
fn newton(
    curve: &BoundaryCurve,
    op: &Operator,
    mut u: Vec<f64>,
    mut sigma: f64,
    layout: &Layout,
    tol: f64,
) -> Result<(Vec<f64>, f64, State, usize)> {
    let m = layout.unknowns();
    if layout.rows.len() != m {
        return Err(Error::Internal(format!(
            "{} equations for {m} unknowns",
            layout.rows.len()
        )));
    }
    let norm_of = |st: &State| {
        layout
            .rows
            .iter()
            .fold(0.0f64, |acc, &i| acc.max(st.r[i].abs()))
    };
    let mut state = evaluate(curve, op, sigma, &u);
    let mut norm = norm_of(&state);
    let mut growth = 0usize;
    let mut iterations = 0usize;
    while norm > tol {
        if iterations == MAX_NEWTON {
            return Err(Error::NonConvergence {
                iterations,
                diagnostic: format!("residual {norm:e} after the Newton budget"),
            });
        }
        iterations += 1;
        let pts = &state.pts;
        let jac = Mat::<f64>::from_fn(m, m, |r, k| {
            let i = layout.rows[r];
            if k == layout.free.len() {
                return -op.t[i];
            }
            let f = layout.free[k];
            let d = if i == f { pts[f][2] } else { 0.0 };
            let mut v = d - op.k[(i, f)] * pts[f][3];
            if let Some(mir) = &layout.mirror {
                let g = mir[f];
                let dg = if i == g { pts[g][2] } else { 0.0 };
                v -= dg - op.k[(i, g)] * pts[g][3];
            }
            v
        });
        let rhs = Mat::<f64>::from_fn(m, 1, |r, _| -state.r[layout.rows[r]]);
        let dv = jac.partial_piv_lu().solve(&rhs);
        if (0..m).any(|k| !dv[(k, 0)].is_finite()) {
            return Err(Error::NonConvergence {
                iterations,
                diagnostic: "singular Newton system".into(),
            });
        }
        let trial_at = |step: f64| {
            let (v, s) = layout.advance(&u, sigma, &dv, step);
            let st = evaluate(curve, op, s, &v);
            let nm = norm_of(&st);
            (v, s, st, nm)
        };
        let mut step = 1.0;
        let mut accepted = None;
        while step >= 1.0 / 1024.0 {
            let cand = trial_at(step);
            if cand.3 < norm * (1.0 - 1e-4 * step) {
                accepted = Some(cand);
                break;
            }
            step *= 0.5;
        }
        let (trial, s_next, next, next_norm) = accepted.unwrap_or_else(|| trial_at(step));
        if next_norm >= norm {
            growth += 1;
            if growth >= GROWTH_LIMIT {
                return Err(Error::NonConvergence {
                    iterations,
                    diagnostic: format!(
                        "residual grew for {GROWTH_LIMIT} consecutive steps (now {next_norm:e}, damping {step})"
                    ),
                });
            }
        } else {
            growth = 0;
        }
        u = trial;
        sigma = s_next;
        state = next;
        norm = next_norm;
    }
    Ok((u, sigma, state, iterations))
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    curve: &BoundaryCurve,
    mesh: &MeshSpec,
    op: &Operator,
    u: Vec<f64>,
    sigma: f64,
    state: State,
    iterations: usize,
    tol: f64,
) -> HalfPlaneMap {
    let t = &op.t;
    let n = t.len();
    let (lev_l, lev_r) = (curve.left_asymptote(), curve.right_asymptote());
    let rho: Vec<f64> = state.pts.iter().map(|p| p[1]).collect();
    let density = BoundaryDensity {
        grid: t.clone(),
        rho,
        tail_level_left: lev_l,
        tail_level_right: lev_r,
        tail_start_left: t[0],
        tail_start_right: t[n - 1],
    };
    let pv_origin = density.pv_sum(0.0);
    HalfPlaneMap {
        sigma,
        curve: curve.clone(),
        density,
        arc: u,
        info: SolveInfo {
            sigma,
            mesh: mesh.clone(),
            nodes: n,
            tol,
            iterations,
            residual: state.norm,
        },
        pv_origin,
    }
}

/// Map with `H(z) ~ z` onto the region above an even curve whose corners
/// at arc parameters `±u_c` have their preimages pinned to the nodes `±t_c`
/// of the unscaled mesh; solves for `σ` and returns the rescaled map
/// `z -> H_σ(z/σ)`, whose corner preimages are `±σ t_c`.
///
/// The nodes are the positive mesh nodes mirrored about 0, and the solution
/// is kept odd in `t`.
pub(crate) fn solve_pinned(
    curve: &BoundaryCurve,
    mesh: &MeshSpec,
    t_c: f64,
    u_c: f64,
    tol: f64,
) -> Result<HalfPlaneMap> {
    curve.validate()?;
    mesh.validate()?;
    if !curve.is_even() || !(t_c > 0.0) {
        return Err(Error::Internal(
            "pinned solve needs an even curve and t_c > 0".into(),
        ));
    }
    let pos: Vec<f64> = mesh.nodes().into_iter().filter(|&x| x > 0.0).collect();
    let p = pos.len();
    let t: Vec<f64> = pos
        .iter()
        .rev()
        .map(|x| -x)
        .chain(std::iter::once(0.0))
        .chain(pos.iter().copied())
        .collect();
    let n = t.len();
    let sym = MeshSpec {
        lo: t[0],
        hi: t[n - 1],
        ..mesh.clone()
    };
    check_resolution(curve, 1.0, &sym, n, tol)?;
    let pin = t
        .iter()
        .position(|&x| x == t_c)
        .ok_or_else(|| Error::Internal(format!("mesh lacks the pinned node {t_c}")))?;
    let mirror: Vec<usize> = (0..n).map(|i| n - 1 - i).collect();
    let rows: Vec<usize> = (p + 1..n).collect();
    let free: Vec<usize> = rows.iter().copied().filter(|&i| i != pin).collect();
    let layout = Layout {
        free,
        rows,
        mirror: Some(mirror),
        float_sigma: true,
    };
    let op = Operator::new(t.clone(), curve.left_asymptote(), curve.right_asymptote());
    let shift = u_c - t_c;
    let u: Vec<f64> = t
        .iter()
        .map(|&x| {
            if x.abs() <= t_c {
                x * u_c / t_c
            } else {
                x + shift.copysign(x)
            }
        })
        .collect();
    let (u, sigma, state, iterations) = newton(curve, &op, u, 1.0, &layout, tol)?;
    let raw = assemble(curve, &sym, &op, u, sigma, state, iterations, tol);
    let density = BoundaryDensity {
        grid: raw.density.grid.iter().map(|x| x * sigma).collect(),
        tail_start_left: raw.density.tail_start_left * sigma,
        tail_start_right: raw.density.tail_start_right * sigma,
        ..raw.density
    };
    let pv_origin = density.pv_sum(0.0);
    Ok(HalfPlaneMap {
        sigma: 1.0,
        curve: raw.curve,
        density,
        arc: raw.arc,
        info: SolveInfo {
            sigma: 1.0,
            mesh: sym.scaled(sigma),
            ..raw.info
        },
        pv_origin,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_PI_2;

    use super::*;

    fn star(sigma: f64, mesh: &MeshSpec) -> HalfPlaneMap {
        solve_halfplane_map(&BoundaryCurve::OmegaStar, sigma, mesh, 1e-11).unwrap()
    }

    fn coarse() -> MeshSpec {
        MeshSpec::uniform(0.1, -40.0, 40.0)
            .refine_at(0.0)
            .with_node(2.0)
    }

    #[test]
    fn flat_curve_gives_linear_map() {
        let map = solve_halfplane_map(&BoundaryCurve::Flat, 1.5, &coarse(), 1e-12).unwrap();
        assert!(map.density.rho.iter().all(|&r| r == 0.0));
        for z in [
            Complex64::new(0.3, 0.2),
            Complex64::new(-4.0, 7.0),
            Complex64::new(2.0, 0.0),
        ] {
            let w = eval_map(&map, z).unwrap();
            assert!((w - 1.5 * z).norm() < 1e-12, "{z}: {w}");
        }
    }

    #[test]
    fn omega_star_map_properties() {
        let map = star(1.0, &coarse());
        assert!(map.info.residual <= 1e-11);
        assert!(map.density.rho.iter().all(|&r| r >= 0.0));
        assert!((map.density.at(10.0) - FRAC_PI_2).abs() < 1e-3);
        assert_eq!(
            eval_map(&map, Complex64::new(0.0, 0.0)).unwrap().norm(),
            0.0
        );
        let small = eval_map(&map, Complex64::new(0.0, 1e-9)).unwrap();
        assert!(small.norm() < 1e-4);
        let far = Complex64::new(0.0, 1e4);
        let w = eval_map(&map, far).unwrap();
        assert!((w / far - 1.0).norm() <= 1e-3);
        // imaginary part on the axis is the density
        for &t in &[0.5, 3.0, 17.0] {
            let v = eval_map(&map, Complex64::new(t, 0.0)).unwrap();
            assert!((v.im - map.density.at(t)).abs() < 1e-15);
            let near = eval_map(&map, Complex64::new(t, 1e-7)).unwrap();
            assert!((near - v).norm() < 1e-4, "t = {t}: {near} vs {v}");
        }
        // image points lie on the curve
        let images = map.boundary_images();
        for ((x, r), u) in images.iter().zip(&map.density.rho).zip(&map.arc) {
            let xc = map.curve.invert_arc(*u);
            assert!((xc - x).abs() <= 10.0 * map.info.tol);
            assert_eq!(map.curve.height(xc), *r);
        }
        assert!(map.info.residual <= 10.0 * map.info.tol);
        assert!(eval_map(&map, Complex64::new(1.0, -0.1)).is_err());
    }

    #[test]
    fn right_tail_decays_exponentially() {
        let map = star(1.0, &coarse());
        let d = &map.density;
        let pairs: Vec<(f64, f64)> = d
            .grid
            .iter()
            .zip(&d.rho)
            .filter(|(t, _)| **t >= 4.0 && **t <= 12.0)
            .map(|(&t, &r)| (t, FRAC_PI_2 - r))
            .collect();
        let k = pairs
            .iter()
            .map(|(t, g)| g * (t / 2.0).exp())
            .fold(0.0, f64::max);
        for (t, g) in &pairs {
            assert!(*g <= k * (-t / 2.0).exp() + 1e-15);
        }
        // fitted exponent from two points
        let g = |t: f64| FRAC_PI_2 - d.at(t);
        let rate = (g(4.0) / g(8.0)).ln() / 4.0;
        assert!(rate >= 0.5, "rate {rate}");
    }

    #[test]
    fn scaling_law() {
        let base = coarse();
        let one = star(1.0, &base);
        for sigma in [0.5, 2.0] {
            let m = star(sigma, &base.scaled(1.0 / sigma));
            for (t, r) in m.density.grid.iter().zip(&m.density.rho) {
                let want = interp(&one.density.grid, &one.density.rho, sigma * t);
                assert!((r - want).abs() <= 1e-9, "sigma {sigma}, t {t}");
            }
        }
    }

    #[test]
    fn even_curve_symmetry() {
        let curve = BoundaryCurve::Entire { b: 2.0 };
        let mesh = MeshSpec::uniform(0.1, -42.0, 42.0)
            .refine_at(-1.2)
            .refine_at(1.2);
        let map = solve_halfplane_map(&curve, 1.0, &mesh, 1e-11).unwrap();
        for z in [
            Complex64::new(0.7, 0.4),
            Complex64::new(3.0, 2.0),
            Complex64::new(0.0, 1.0),
        ] {
            let w = eval_map(&map, z).unwrap();
            let v = eval_map(&map, -z.conj()).unwrap();
            assert!((v + w.conj()).norm() < 1e-8, "{z}: {w} {v}");
        }
    }

    #[test]
    fn resolution_errors() {
        let curve = BoundaryCurve::OmegaStar;
        let tiny = MeshSpec::uniform(1.0, -3.0, 3.0);
        assert!(matches!(
            solve_halfplane_map(&curve, 1.0, &tiny, 1e-10),
            Err(Error::Resolution(_))
        ));
        let short = MeshSpec::uniform(0.1, -10.0, 10.0);
        assert!(matches!(
            solve_halfplane_map(&curve, 1.0, &short, 1e-10),
            Err(Error::Resolution(_))
        ));
        assert!(matches!(
            solve_halfplane_map(&curve, 20.0, &coarse(), 1e-10),
            Err(Error::Resolution(_))
        ));
    }
}
