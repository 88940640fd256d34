use sgnapprox::extremal::{verify_critical_values, PhiTransform};
use sgnapprox::remez::{
    alternation_count, certify, solve_bernstein, solve_sign_direct, solve_sign_poly, SignOptions,
};
use sgnapprox::Real;

fn solve(a: f64, m: usize) -> sgnapprox::remez::SignPolyResult {
    solve_sign_poly(&Real::from_f64(a, 64), m, &SignOptions::default()).unwrap()
}

#[test]
fn degree_one_closed_form_across_gaps() {
    for k in 1..=9 {
        let a = k as f64 / 10.0;
        let res = solve(a, 0);
        let p = res.prec();
        let ar = Real::from_f64(a, p);
        let want = (Real::one(p) - &ar) / (Real::one(p) + &ar);
        assert!(
            ((&res.l - &want) / &want).abs() <= Real::one(p).ulp_scale(16),
            "a = {a}"
        );
    }
}

#[test]
fn lp_oracle_agrees_with_exchange() {
    let opts = SignOptions {
        tol: 1e-10,
        ..SignOptions::default()
    };
    for (a, m) in [(0.2, 1), (0.5, 2), (0.35, 3), (0.15, 4)] {
        let ar = Real::from_f64(a, 64);
        let ex = solve_sign_poly(&ar, m, &opts).unwrap();
        let lp = solve_sign_direct(&ar, m, &opts).unwrap();
        let rel = ((&ex.l - &lp.l) / &ex.l).abs().to_f64();
        assert!(rel < 1e-8, "a = {a}, m = {m}: {rel:e}");
    }
}

#[test]
fn error_decreases_in_m_and_in_a() {
    let gaps = [0.1, 0.3, 0.5, 0.7];
    let ms = [1, 3, 6, 10];
    let table: Vec<Vec<f64>> = gaps
        .iter()
        .map(|&a| ms.iter().map(|&m| solve(a, m).l.to_f64()).collect())
        .collect();
    for row in &table {
        assert!(row.windows(2).all(|w| w[1] < w[0]));
    }
    for j in 0..ms.len() {
        assert!(table.windows(2).all(|w| w[1][j] < w[0][j]));
    }
}

#[test]
fn full_certification_chain() {
    let res = solve(0.25, 7);
    assert_eq!(alternation_count(&res.p, &res.l, 1e-6, 1000), 18);
    let crit = verify_critical_values(&res, 1e-8).unwrap();
    assert!(crit.alternation_ok);
    let t = PhiTransform::new(&res).unwrap();
    let top = t.eval(&Real::one(res.prec())).unwrap().to_f64();
    assert!((top - 8.0 * std::f64::consts::PI).abs() < 1e-6);
    assert!((t.value_at_origin().unwrap() - &res.b).abs() < 1e-20);
}

#[test]
fn bernstein_problem_is_certified() {
    let res = solve_bernstein(&Real::from_f64(0.5, 64), 6, &SignOptions::default()).unwrap();
    let cert = certify(&res, 32);
    assert!(cert.lower <= res.l && res.l <= cert.upper);
    assert!(cert.relative_gap().to_f64() < 1e-10);
}
