use sgnapprox::asymptotics::{
    a_m_of, levy_distance, sigma_of, sweep, t1_target, trend_report, SweepKind,
};
use sgnapprox::conformal::{
    compute_c, solve_entire, solve_halfplane_map, BoundaryCurve, EntireOptions, MeshSpec, C_EXACT,
};
use sgnapprox::extremal::{entire_extremal_boundary, first_critical_point};
use sgnapprox::remez::{solve_sign_poly, SignOptions};
use sgnapprox::Real;

#[test]
fn coarse_constant_is_close() {
    let mesh = MeshSpec::uniform(0.1, -40.0, 40.0)
        .refine_at(0.0)
        .with_node(2.0);
    let map = solve_halfplane_map(&BoundaryCurve::OmegaStar, 1.0, &mesh, 1e-11).unwrap();
    let c = compute_c(&map, 1e-6).unwrap();
    assert!((c - C_EXACT).abs() < 1e-2);
    // far along the boundary the density sits at π/2
    let rho10 = map.density.rho[map.density.grid.partition_point(|&t| t < 10.0)];
    assert!((rho10 - std::f64::consts::FRAC_PI_2).abs() < 1e-3);
}

#[test]
fn entire_profile_matches_rescaled_polynomial_shape() {
    let opts = EntireOptions {
        h: 0.1,
        ..EntireOptions::default()
    };
    let sol = solve_entire(5.0, &opts).unwrap();
    let x1 = first_critical_point(&sol).unwrap();
    // the limit profile is 1 - L at A and 1 + L at the first critical point
    assert!((entire_extremal_boundary(&sol, sol.a).unwrap() - (1.0 - sol.l)).abs() < 1e-14);
    assert!((entire_extremal_boundary(&sol, x1).unwrap() - (1.0 + sol.l)).abs() < 1e-8);
    // φ grows like sqrt(x^2 - A^2) near A
    let pi = std::f64::consts::PI;
    assert!(x1 > sol.a && x1 < (sol.a * sol.a + 4.0 * pi * pi).sqrt());
    assert!((sol.phi(x1).unwrap() - pi).abs() < 1e-9);
}

#[test]
fn scaled_errors_approach_the_limit_at_one_half() {
    let ms: Vec<usize> = (4..=16).collect();
    let rows = sweep(SweepKind::Sign, 0.5, &ms, &SignOptions::default()).unwrap();
    let rep = trend_report(&rows).unwrap();
    assert!(rep.monotone_tail);
    let target = t1_target(&Real::from_f64(0.5, 64)).unwrap().to_f64();
    assert!(rep.accelerated_gap.unwrap() < rows.last().unwrap().gap);
    assert!((rep.target - target).abs() < 1e-15);
}

#[test]
fn scaling_parameters_are_consistent() {
    let a = Real::from_f64(0.4, 128);
    let am = a_m_of(&a, 12).unwrap().to_f64();
    let sigma = sigma_of(&a).unwrap().to_f64();
    assert!((am - 12.5 * (1.4f64 / 0.6).ln()).abs() < 1e-13);
    assert!(sigma > 1.0);
}

#[test]
fn levy_distance_of_an_extremal_polynomial() {
    let res = solve_sign_poly(&Real::from_f64(0.05, 64), 4, &SignOptions::default()).unwrap();
    let l = res.l.to_f64();
    let d = levy_distance(&res.p, 1e-9).unwrap().to_f64();
    // with L > a the error level sets the corridor width
    assert!(l > 0.05);
    assert!((d - l).abs() < 2e-9);
}
