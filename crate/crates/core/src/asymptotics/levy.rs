use serde::Serialize;

use super::laws::b_m_predict;
use crate::error::{Error, Result};
use crate::remez::{cosine_grid, solve_sign_poly, SignOptions, SignPolyResult};
use crate::scalar::{OddPoly, Real};

/// Largest value of `f` on `[lo, hi]`: grid scan, then golden-section
/// refinement around every grid-local maximum.
fn sup_on(f: &dyn Fn(&Real) -> Real, lo: &Real, hi: &Real, n: usize) -> Real {
    if lo >= hi {
        return f(lo);
    }
    let xs = cosine_grid(lo, hi, n);
    let vs: Vec<Real> = xs.iter().map(f).collect();
    let last = vs.len() - 1;
    let mut best = vs
        .iter()
        .cloned()
        .reduce(Real::max_of)
        .expect("non-empty grid");
    for j in 0..=last {
        let left_ok = j == 0 || vs[j] >= vs[j - 1];
        let right_ok = j == last || vs[j] >= vs[j + 1];
        if left_ok && right_ok && j > 0 && j < last {
            let (_, v) = crate::remez::golden_max(f, &xs[j - 1], &xs[j + 1], 120);
            best = best.max_of(v);
        }
    }
    best
}

fn corridor_holds(p: &OddPoly, h: f64, grid: usize) -> bool {
    let prec = p.prec();
    let one = Real::one(prec);
    let hr = Real::from_f64(h, prec);
    let outer = |x: &Real| (p.eval(x) - 1.0).abs();
    if hr < one && sup_on(&outer, &hr, &one, grid) > hr {
        return false;
    }
    let inner = |x: &Real| p.eval(x).abs();
    let top = hr.clone().min_of(one);
    sup_on(&inner, &Real::zero(prec), &top, grid) <= &hr + 1.0
}

/// Lévy distance between `sgn` and the odd polynomial `p` on `[-1, 1]`,
/// to within `tol`.
///
/// For odd `p` this is the least `h` with `|p - 1| <= h` on `[h, 1]` and
/// `|p| <= 1 + h` on `[0, h]`.
pub fn levy_distance(p: &OddPoly, tol: f64) -> Result<Real> {
    levy_distance_with(p, tol, (32 * p.degree()).max(256))
}

/// [`levy_distance`] with an explicit scan size for the suprema.
pub fn levy_distance_with(p: &OddPoly, tol: f64, grid: usize) -> Result<Real> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tol = {tol} must be positive")));
    }
    let mut hi = 1.0;
    while !corridor_holds(p, hi, grid) {
        hi *= 2.0;
        if hi > 1e300 {
            return Err(Error::Evaluation {
                node: "corridor".into(),
                reason: "p is unbounded on [0, 1]".into(),
            });
        }
    }
    let mut lo = 0.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if corridor_holds(p, mid, grid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Real::from_f64(hi, p.prec()))
}

/// A solution of `L_m(a) = a`.
#[derive(Clone, Debug, Serialize)]
pub struct LevyPoint {
    pub m: usize,
    pub a_star: f64,
    #[serde(rename = "L_star")]
    pub l_star: f64,
    /// `(m / log m) a*`.
    pub scaled: f64,
    #[serde(skip)]
    pub solution: SignPolyResult,
}

fn bisect_fixed<F>(g: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let (glo, ghi) = (g(lo)?, g(hi)?);
    if !(glo > 0.0 && ghi < 0.0) {
        return Err(Error::Precondition(format!(
            "no sign change of L - a on [{lo}, {hi}]"
        )));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if g(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Fixed point of `a = 1/cosh(b_m_predict(a, m, c))`.
pub fn predicted_fixed_point(m: usize, c: f64, tol: f64) -> Result<f64> {
    let cr = Real::from_f64(c, 64);
    bisect_fixed(
        |a| {
            let b = b_m_predict(&Real::from_f64(a, 64), m, &cr)?;
            Ok(1.0 / b.to_f64().cosh() - a)
        },
        1e-6,
        0.999,
        tol,
    )
}

/// The `a*` in `[1e-4, 0.9]` with `L_m(a*) = a*`, by bisection on `a`,
/// solving the sign problem at each step.
///
/// The bracket is first narrowed around the predicted fixed point when the
/// prediction brackets the sign change.
pub fn levy_fixed_point(m: usize, tol: f64, opts: &SignOptions) -> Result<LevyPoint> {
    if m == 0 {
        return Err(Error::Domain("m must be at least 1".into()));
    }
    let solve = |a: f64| solve_sign_poly(&Real::from_f64(a, 64), m, opts);
    let g = |a: f64| solve(a).map(|r| r.l.to_f64() - a);
    let (mut lo, mut hi) = (1e-4, 0.9);
    if let Ok(guess) = predicted_fixed_point(m, crate::conformal::C_EXACT, 1e-9) {
        let (l2, h2) = ((0.5 * guess).max(lo), (2.0 * guess).min(hi));
        if g(l2)? > 0.0 && g(h2)? < 0.0 {
            lo = l2;
            hi = h2;
        }
    }
    let a_star = bisect_fixed(g, lo, hi, tol)?;
    let solution = solve(a_star)?;
    let mf = m as f64;
    Ok(LevyPoint {
        m,
        a_star,
        l_star: solution.l.to_f64(),
        scaled: if m > 1 {
            mf / mf.ln() * a_star
        } else {
            f64::NAN
        },
        solution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{odd_lift, ChebPoly};

    fn identity(a: f64) -> OddPoly {
        let prec = 64;
        let a = Real::from_f64(a, prec);
        let q = ChebPoly::constant(Real::one(prec), a.sqr(), Real::one(prec)).unwrap();
        odd_lift(&q, &a).unwrap()
    }

    #[test]
    fn identity_has_distance_one_half() {
        let d = levy_distance(&identity(0.5), 1e-9).unwrap();
        assert!((d.to_f64() - 0.5).abs() < 2e-9);
    }

    #[test]
    fn extremal_polynomial_distance() {
        let opts = SignOptions::default();
        let res = solve_sign_poly(&Real::from_f64(0.1, 64), 3, &opts).unwrap();
        // below the fixed point the corridor is set by the error level
        let l = res.l.to_f64();
        assert!(l > 0.1);
        let d = levy_distance(&res.p, 1e-9).unwrap().to_f64();
        assert!((d - l).abs() < 2e-9, "{d} vs {l}");
        let fine = levy_distance_with(&res.p, 1e-9, 4 * (32 * 7))
            .unwrap()
            .to_f64();
        assert!((d - fine).abs() <= 1e-9);
    }

    #[test]
    fn fixed_point_small_m() {
        let opts = SignOptions::default();
        let one = levy_fixed_point(1, 1e-6, &opts).unwrap();
        assert!((one.l_star - one.a_star).abs() < 2e-6);
        let d = levy_distance(&one.solution.p, 1e-8).unwrap().to_f64();
        assert!((d - one.a_star).abs() < 2e-6, "{d} vs {}", one.a_star);
        let two = levy_fixed_point(2, 1e-6, &opts).unwrap();
        assert!(two.a_star < one.a_star);
        assert!(levy_fixed_point(0, 1e-6, &opts).is_err());
    }

    #[test]
    fn predicted_point_solves_its_equation() {
        let a = predicted_fixed_point(50, crate::conformal::C_EXACT, 1e-12).unwrap();
        let b = b_m_predict(
            &Real::from_f64(a, 64),
            50,
            &Real::from_f64(0.9189385332, 64),
        )
        .unwrap();
        assert!((1.0 / b.to_f64().cosh() - a).abs() < 1e-10);
    }
}
