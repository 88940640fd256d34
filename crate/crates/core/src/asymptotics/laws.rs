use serde::Serialize;

use crate::conformal::C_EXACT;
use crate::error::{Error, Result};
use crate::scalar::Real;

fn check_a(a: &Real) -> Result<()> {
    if !(*a > 0.0 && *a < 1.0) {
        return Err(Error::Domain(format!(
            "a = {} must lie in (0, 1)",
            a.to_f64()
        )));
    }
    Ok(())
}

/// `log((1 + a)/(1 - a))`.
fn log_ratio(a: &Real) -> Real {
    let one = Real::one(a.prec());
    ((&one + a) / (&one - a)).ln()
}

/// `A_m = (m + 1/2) log((1 + a)/(1 - a))`.
pub fn a_m_of(a: &Real, m: usize) -> Result<Real> {
    check_a(a)?;
    Ok(log_ratio(a) * (m as f64 + 0.5))
}

/// `σ = 2a / ((1 - a^2) log((1 + a)/(1 - a)))`.
pub fn sigma_of(a: &Real) -> Result<Real> {
    check_a(a)?;
    let one = Real::one(a.prec());
    Ok(a * 2.0 / ((&one - a.sqr()) * log_ratio(a)))
}

/// Predicted `B_m = arccosh(1/L_m(a))` without the `o(1)` term.
pub fn b_m_predict(a: &Real, m: usize, c: &Real) -> Result<Real> {
    check_a(a)?;
    if m == 0 {
        return Err(Error::Domain("the prediction needs m >= 1".into()));
    }
    let p = a.prec().max(c.prec());
    let one = Real::one(p);
    let mf = Real::from_int(m as i64, p);
    let width = a * 2.0 / (&one - a.sqr());
    Ok(a_m_of(a, m)? + mf.ln() * 0.5 + width.ln() * 0.5 + c)
}

/// `sqrt(m) ((1 + a)/(1 - a))^m L`.
pub fn t1_scaled(a: &Real, m: usize, l: &Real) -> Result<Real> {
    check_a(a)?;
    if !(*l > 0.0) {
        return Err(Error::Domain("L must be positive".into()));
    }
    if m == 0 {
        return Ok(Real::zero(a.prec().max(l.prec())));
    }
    let p = a.prec().max(l.prec());
    let mf = Real::from_int(m as i64, p);
    let log = mf.ln() * 0.5 + log_ratio(&a.with_prec(p)) * m as f64 + l.ln();
    Ok(log.exp())
}

/// `(1 - a)/sqrt(π a)`.
pub fn t1_target(a: &Real) -> Result<Real> {
    check_a(a)?;
    let one = Real::one(a.prec());
    Ok((&one - a) / (Real::pi(a.prec()) * a).sqrt())
}

/// `e^{-c} sqrt(2) (1 - a)/sqrt(a)`, the limit of [`t1_scaled`] for a
/// given constant `c`.
pub fn eq_a_target(a: &Real, c: &Real) -> Result<Real> {
    check_a(a)?;
    let p = a.prec().max(c.prec());
    let one = Real::one(p);
    Ok((-c).exp() * Real::from_int(2, p).sqrt() * (&one - a) / a.sqrt())
}

/// The `c` for which [`eq_a_target`] equals `limit`.
pub fn c_from_limit(a: &Real, limit: &Real) -> Result<Real> {
    check_a(a)?;
    let p = a.prec().max(limit.prec());
    let one = Real::one(p);
    Ok((Real::from_int(2, p).sqrt() * (&one - a) / (a.sqrt() * limit)).ln())
}

/// `sqrt(A) e^A L`.
pub fn t2_scaled(a: &Real, l: &Real) -> Result<Real> {
    if !(*a > 0.0 && *l > 0.0) {
        return Err(Error::Domain("A and L must be positive".into()));
    }
    Ok((a.ln() * 0.5 + a + l.ln()).exp())
}

/// `sqrt(2/π)`.
pub fn t2_target(prec: u32) -> Real {
    (Real::from_int(2, prec) / Real::pi(prec)).sqrt()
}

/// `sqrt(m) ((1 + a)/(1 - a))^m E` for the unweighted error `E`.
pub fn bern_scaled(a: &Real, m: usize, e: &Real) -> Result<Real> {
    t1_scaled(a, m, e)
}

/// `(1 - a^2) a^{-3/2} / (2 sqrt(π))`.
pub fn bern_target(a: &Real) -> Result<Real> {
    check_a(a)?;
    let p = a.prec();
    let one = Real::one(p);
    Ok((&one - a.sqr()) / (a * a.sqrt() * Real::pi(p).sqrt() * 2.0))
}

/// `log m - log log m + log 4`.
pub fn tri_b(m: usize, prec: u32) -> Result<Real> {
    if m < 3 {
        return Err(Error::Domain(format!("m = {m} must be at least 3")));
    }
    let mf = Real::from_int(m as i64, prec);
    let lm = mf.ln();
    Ok(&lm - lm.ln() + Real::from_int(4, prec).ln())
}

/// Parameters of the comparison at one `(a, m)`.
#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticParams {
    pub a: Real,
    pub m: usize,
    #[serde(rename = "A_m")]
    pub a_m: Real,
    pub sigma: Real,
    pub c: Real,
}

impl AsymptoticParams {
    /// With `c = log(2π)/2` unless given.
    pub fn new(a: &Real, m: usize, c: Option<Real>) -> Result<AsymptoticParams> {
        let c = c.unwrap_or_else(|| default_c(a.prec()));
        Ok(AsymptoticParams {
            a: a.clone(),
            m,
            a_m: a_m_of(a, m)?,
            sigma: sigma_of(a)?,
            c,
        })
    }
}

/// `log(2π)/2` at `prec` bits.
pub(crate) fn default_c(prec: u32) -> Real {
    let c = (Real::pi(prec) * 2.0).ln() * 0.5;
    debug_assert!((c.to_f64() - C_EXACT).abs() < 1e-15);
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    const P: u32 = 128;

    fn r(x: f64) -> Real {
        Real::from_f64(x, P)
    }

    fn third() -> Real {
        Real::from_ratio(1, 3, P)
    }

    fn close(x: &Real, want: f64, tol: f64) -> bool {
        (x.to_f64() - want).abs() <= tol
    }

    #[test]
    fn a_m_examples() {
        assert!(close(
            &a_m_of(&third(), 10).unwrap(),
            10.5 * 2f64.ln(),
            1e-14
        ));
        assert!(close(&a_m_of(&third(), 10).unwrap(), 7.278045, 1e-6));
        assert!(close(&a_m_of(&r(0.5), 0).unwrap(), 0.5 * 3f64.ln(), 1e-15));
        assert!(a_m_of(&r(1e-12), 7).unwrap().to_f64() < 1e-10);
        assert!(a_m_of(&r(1.0), 3).is_err());
        assert!(a_m_of(&r(0.3), 4).unwrap() < a_m_of(&r(0.3), 5).unwrap());
    }

    #[test]
    fn sigma_examples() {
        let third_want = (2.0 / 3.0) / ((8.0 / 9.0) * 2f64.ln());
        assert!(close(&sigma_of(&third()).unwrap(), third_want, 1e-14));
        assert!(close(&sigma_of(&third()).unwrap(), 1.08202, 1e-5));
        assert!(close(
            &sigma_of(&r(0.5)).unwrap(),
            1.0 / (0.75 * 3f64.ln()),
            1e-14
        ));
        assert!(close(&sigma_of(&r(1e-6)).unwrap(), 1.0, 1e-11));
        assert!(sigma_of(&r(0.0)).is_err());
    }

    #[test]
    fn b_m_examples() {
        let c = r(0.918939);
        let b = b_m_predict(&third(), 16, &c).unwrap();
        assert!(close(&b, 13.5984, 1e-4), "{}", b.to_f64());
        assert!(b_m_predict(&third(), 0, &c).is_err());
        let a = r(0.4);
        let d = b_m_predict(&a, 9, &c).unwrap() - b_m_predict(&a, 8, &c).unwrap();
        let want = (1.4f64 / 0.6).ln() + 0.5 * (9.0f64 / 8.0).ln();
        assert!(close(&d, want, 1e-14));
    }

    #[test]
    fn exp_form_matches_error_law() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let c = default_c(P);
        for _ in 0..5 {
            let a = r(rng.gen_range(0.05..0.95));
            let m = rng.gen_range(1..60usize);
            let b = b_m_predict(&a, m, &c).unwrap();
            let l = (-b).exp() * 2.0;
            let scaled = t1_scaled(&a, m, &l).unwrap();
            let want = eq_a_target(&a, &c).unwrap();
            assert!(((scaled - &want) / &want).abs() < 1e-30);
        }
    }

    #[test]
    fn limit_targets() {
        assert!(close(&t1_target(&third()).unwrap(), 0.651470, 1e-6));
        assert!(close(&t1_target(&r(0.5)).unwrap(), 0.398942, 1e-6));
        let c = default_c(P);
        for a in [0.1, 1.0 / 3.0, 0.7] {
            let d = eq_a_target(&r(a), &c).unwrap() - t1_target(&r(a)).unwrap();
            assert!(d.abs() < 1e-30);
            let back = c_from_limit(&r(a), &t1_target(&r(a)).unwrap()).unwrap();
            assert!((back - &c).abs() < 1e-30);
        }
        assert_eq!(t1_scaled(&third(), 0, &r(0.5)).unwrap(), 0.0);
        assert!(close(&t2_target(P), 0.7978845608, 1e-10));
    }

    #[test]
    fn t2_examples() {
        assert!(close(
            &t2_scaled(&r(1.0), &r(1.0)).unwrap(),
            std::f64::consts::E,
            1e-14
        ));
        // L ≈ 2 e^{-B} with B = A + log(A)/2 + c gives the target exactly
        let a = r(7.5);
        let b = &a + a.ln() * 0.5 + default_c(P);
        let l = (-b).exp() * 2.0;
        let v = t2_scaled(&a, &l).unwrap();
        assert!((v - t2_target(P)).abs() < 1e-30);
    }

    #[test]
    fn bernstein_target() {
        let t = bern_target(&r(0.9)).unwrap();
        assert!(close(&t, 0.06278, 1e-5), "{}", t.to_f64());
        assert!(bern_target(&r(1.0 - 1e-12)).unwrap().to_f64() < 1e-11);
        // weighted over unweighted targets: 2a/(1 + a) at c = log(2π)/2
        let a = r(0.6);
        let ratio = t1_target(&a).unwrap() / bern_target(&a).unwrap();
        assert!(close(&ratio, 2.0 * 0.6 / 1.6, 1e-14));
    }

    #[test]
    fn tri_examples() {
        let b = tri_b(100, P).unwrap();
        assert!(close(&b, 4.46428, 1e-5));
        let l = (-b).exp() * 2.0;
        assert!(close(&l, 0.02302, 1e-5));
        assert!(close(&l, 100f64.ln() / 200.0, 2e-5));
        assert!(tri_b(3, P).unwrap().is_finite());
        assert!(tri_b(2, P).is_err());
    }

    #[test]
    fn params() {
        let p = AsymptoticParams::new(&third(), 10, None).unwrap();
        assert!(p.a_m > 0.0 && p.sigma > 0.0);
        assert!(close(&p.c, C_EXACT, 1e-15));
    }
}
