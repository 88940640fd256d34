//! Serialized outputs. Reals are written as tagged strings `p=<bits>:<digits>`
//! so that every value round-trips at its working precision.

use serde::Serialize;

use crate::asymptotics::{t2_scaled, t2_target, LevyPoint, SweepRow, TrendReport};
use crate::conformal::EntireSolution;
use crate::error::{Error, Result};
use crate::remez::SignPolyResult;
use crate::scalar::{ChebPoly, Real};

/// Solver output for one `(a, m)`.
#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub a: Real,
    pub m: usize,
    #[serde(rename = "L")]
    pub l: Real,
    #[serde(rename = "B")]
    pub b: Real,
    /// `q` with `p(x) = x q(x^2)`, Chebyshev coefficients on `[a^2, 1]`.
    pub coeffs: ChebPoly,
    pub alternants: Vec<Real>,
    pub dvp_gap: Real,
    pub grid_max: Real,
    pub iterations: usize,
    pub precision: u32,
}

impl From<&SignPolyResult> for SolveReport {
    fn from(r: &SignPolyResult) -> Self {
        SolveReport {
            a: r.a.clone(),
            m: r.m,
            l: r.l.clone(),
            b: r.b.clone(),
            coeffs: r.p.base().clone(),
            alternants: r.alternants.clone(),
            dvp_gap: r.dvp_gap.clone(),
            grid_max: r.grid_max.clone(),
            iterations: r.iterations,
            precision: r.prec(),
        }
    }
}

/// `(B, A, L)` and the scaled error `sqrt(A) e^A L`.
#[derive(Clone, Debug, Serialize)]
pub struct EntireReport {
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "L")]
    pub l: f64,
    pub t2_scaled: f64,
    pub target: f64,
    pub gap: f64,
    /// `B - A - log(A)/2`.
    pub c_estimate: f64,
    pub nodes: usize,
    pub residual: f64,
}

impl EntireReport {
    pub fn new(sol: &EntireSolution) -> Result<EntireReport> {
        let p = 64;
        let a = Real::from_f64(sol.a, p);
        let l = Real::one(p) / Real::from_f64(sol.b, p).cosh();
        let scaled = t2_scaled(&a, &l)?.to_f64();
        let target = t2_target(p).to_f64();
        Ok(EntireReport {
            b: sol.b,
            a: sol.a,
            l: sol.l,
            t2_scaled: scaled,
            target,
            gap: (scaled - target).abs() / target,
            c_estimate: sol.b - sol.a - 0.5 * sol.a.ln(),
            nodes: sol.map.info.nodes,
            residual: sol.map.info.residual,
        })
    }
}

/// `(m, a*, (m/log m) a*)` plus the checks made at the fixed point.
#[derive(Clone, Debug, Serialize)]
pub struct LevyReport {
    #[serde(flatten)]
    pub point: LevyPoint,
    pub predicted: f64,
    pub levy_distance: f64,
}

/// CSV with header `m,a,L,B,scaled,target,gap`.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SweepRow::CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

/// Sweep rows and the trend summary as one JSON document.
#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub trend: TrendReport,
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Internal(e.to_string()))
}

/// `{"error": <variant>, "message": <text>}` for failures.
pub fn error_json(err: &Error) -> String {
    let kind = match err {
        Error::Domain(_) => "domain",
        Error::Evaluation { .. } => "evaluation",
        Error::Exchange(_) => "exchange",
        Error::IterationLimit { .. } => "iteration_limit",
        Error::NonConvergence { .. } => "non_convergence",
        Error::Resolution(_) => "resolution",
        Error::Precondition(_) => "precondition",
        Error::Representation { .. } => "representation",
        Error::Parse(_) => "parse",
        Error::Internal(_) => "internal",
    };
    serde_json::json!({ "error": kind, "message": err.to_string() }).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::remez::{solve_sign_poly, SignOptions};

    #[test]
    fn solve_report_round_trips_reals() {
        let res = solve_sign_poly(&Real::from_f64(0.5, 64), 2, &SignOptions::default()).unwrap();
        let json = to_json(&SolveReport::from(&res)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        for key in ["a", "m", "L", "B", "coeffs", "alternants", "dvp_gap"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        let l = Real::parse_tagged(v["L"].as_str().unwrap()).unwrap();
        assert_eq!(l, res.l);
        let coeffs: ChebPoly = serde_json::from_value(v["coeffs"].clone()).unwrap();
        assert_eq!(&coeffs, res.p.base());
        // deterministic output
        assert_eq!(json, to_json(&SolveReport::from(&res)).unwrap());
    }

    #[test]
    fn error_kinds() {
        let e = error_json(&Error::Domain("x".into()));
        let v: serde_json::Value = serde_json::from_str(&e).unwrap();
        assert_eq!(v["error"], "domain");
    }
}

/// Outcome of one named invariant.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// All invariant checks for one `(a, m)`.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub a: f64,
    pub m: usize,
    pub precision: u32,
    pub checks: Vec<Check>,
    pub passed: bool,
}

fn check(name: &'static str, passed: bool, detail: String) -> Check {
    Check {
        name,
        passed,
        detail,
    }
}

/// Solves the sign problem at `(a, m)` and checks it against every
/// invariant the crate can test: the levelled gap, the two-sided
/// certificate, `L cosh B = 1`, oddness, the alternation count, the
/// critical values, the cosine representation, monotonicity in `m`, and
/// for `m <= 4` the linear-programming oracle.
pub fn invariant_suite(
    a: &Real,
    m: usize,
    opts: &crate::remez::SignOptions,
) -> Result<SuiteReport> {
    use crate::extremal::{verify_critical_values, PhiTransform};
    use crate::remez::{
        alternation_count, certify, solve_sign_direct, solve_sign_poly, solve_weighted_minimax,
        ApproxProblem, RemezOptions,
    };
    use crate::scalar::precision_for;

    let res = solve_sign_poly(a, m, opts)?;
    let prec = res.prec();
    let one = Real::one(prec);
    let ulp24 = one.ulp_scale(24);
    let mut checks = Vec::new();

    let gap = res.dvp_gap.to_f64();
    checks.push(check(
        "levelled_gap",
        gap <= opts.tol,
        format!("dvp_gap = {gap:e}"),
    ));

    let wa = a.with_prec(precision_for(a, m, opts.guard_bits)?);
    let problem = ApproxProblem::sign_weighted(&wa, m)?;
    let ropts = RemezOptions {
        tol: opts.tol,
        max_iter: opts.max_iter,
        ..RemezOptions::default()
    };
    let cert = certify(&solve_weighted_minimax(&problem, &ropts)?, 32);
    let rel = cert.relative_gap().to_f64();
    let bracket = cert.lower <= res.l && res.l <= cert.upper;
    checks.push(check(
        "certificate",
        bracket && rel <= 10.0 * opts.tol,
        format!(
            "[{:e}, {:e}], relative gap {rel:e}",
            cert.lower.to_f64(),
            cert.upper.to_f64()
        ),
    ));

    let bl = (&res.l * res.b.cosh() - 1.0).abs();
    checks.push(check(
        "l_cosh_b",
        bl <= ulp24,
        format!("|L cosh B - 1| = {:e}", bl.to_f64()),
    ));

    let odd = (0..=50).all(|i| {
        let x = Real::from_f64(i as f64 / 50.0, prec);
        res.p.eval(&-x.clone()) == -res.p.eval(&x)
    });
    checks.push(check("odd", odd, "p(-x) = -p(x) on 51 samples".into()));

    let count = alternation_count(&res.p, &res.l, 1e-6, (64 * m).max(400));
    checks.push(check(
        "alternation_count",
        count == 2 * m + 4,
        format!("{count} extrema, expected {}", 2 * m + 4),
    ));

    let crit = verify_critical_values(&res, 1e-6_f64.max(10.0 * opts.tol))?;
    checks.push(check(
        "critical_values",
        crit.alternation_ok && crit.count_on_x == 2 * m + 4,
        format!(
            "{} violations, {} extrema",
            crit.violations.len(),
            crit.count_on_x
        ),
    ));

    let slack = &ulp24 + (&res.grid_max - &res.l).abs();
    let rep = PhiTransform::new(&res).and_then(|t| {
        let af = res.a.to_f64();
        let mut worst = Real::zero(prec);
        for i in 0..=200 {
            let x = Real::from_f64(af + (1.0 - af) * i as f64 / 200.0, prec)
                .max_of(res.a.clone())
                .min_of(one.clone());
            let d = (&one - &res.l * t.eval(&x)?.cos() - res.p.eval(&x)).abs();
            worst = worst.max_of(d);
        }
        Ok(worst)
    });
    checks.push(match rep {
        Ok(w) => check(
            "cosine_representation",
            w <= slack,
            format!("max |1 - L cos φ - p| = {:e}", w.to_f64()),
        ),
        Err(e) => check("cosine_representation", false, e.to_string()),
    });

    let next = solve_sign_poly(a, m + 1, opts)?;
    checks.push(check(
        "decreasing_in_m",
        next.l < res.l,
        format!("L_(m+1) = {:e}", next.l.to_f64()),
    ));

    if m <= 4 {
        let lp = crate::remez::SignOptions {
            tol: opts.tol.max(1e-10),
            ..opts.clone()
        };
        let direct = solve_sign_direct(a, m, &lp)?;
        let d = ((&direct.l - &res.l) / &res.l).abs().to_f64();
        checks.push(check(
            "lp_oracle",
            d <= 1e-8,
            format!("relative difference {d:e}"),
        ));
    }

    let passed = checks.iter().all(|c| c.passed);
    Ok(SuiteReport {
        a: a.to_f64(),
        m,
        precision: prec,
        checks,
        passed,
    })
}
