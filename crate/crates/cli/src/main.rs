//! Command-line front end: solves, sweeps, the constant `c`, the entire
//! case, the Lévy fixed point, invariant checks and plot data.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sgnapprox::asymptotics::{
    b_m_predict, c_from_limit, levy_distance, levy_fixed_point, predicted_fixed_point, sweep,
    trend_report, SweepKind,
};
use sgnapprox::conformal::{constant_report, solve_entire, EntireOptions, MeshSpec, C_EXACT};
use sgnapprox::extremal::plot_data;
use sgnapprox::remez::{solve_sign_poly, SignOptions};
use sgnapprox::report::{
    error_json, invariant_suite, sweep_csv, to_json, EntireReport, LevyReport, SolveReport,
    SweepReport,
};
use sgnapprox::scalar::DEFAULT_GUARD_BITS;
use sgnapprox::{Error, Real};

#[derive(Parser, Debug)]
#[command(
    name = "sgnapprox",
    version,
    about = "Best polynomial approximation of sgn(x) on two intervals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Debug)]
struct Global {
    /// Solver tolerance (command-specific default when omitted).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Extra bits of working precision.
    #[arg(long, global = true, env = "SGNAPPROX_GUARD_BITS", default_value_t = DEFAULT_GUARD_BITS)]
    guard_bits: u32,
    /// Worker threads for sweeps (0: all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Output file (standard output when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Use the conformal estimate of c instead of log(2π)/2.
    #[arg(long, global = true)]
    use_measured_c: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Extremal polynomial of degree 2m+1 for the gap (-a, a).
    Solve {
        #[arg(long, value_parser = unit_open)]
        a: f64,
        #[arg(long)]
        m: usize,
    },
    /// Scaled errors over a range of m, with the trend summary.
    Sweep {
        #[arg(long, value_parser = unit_open, num_args = 1.., default_value = "0.3333333333333333")]
        a: Vec<f64>,
        /// Largest m.
        #[arg(long, default_value_t = 40)]
        m: usize,
        #[arg(long, default_value_t = 5)]
        m_min: usize,
        /// Unweighted approximation of 1/sqrt(x) instead of the sign problem.
        #[arg(long)]
        bernstein: bool,
    },
    /// The constant c from the conformal map, with a mesh-doubling estimate.
    Constant {
        /// Uniform mesh spacing.
        #[arg(long, default_value_t = 0.05)]
        h: f64,
    },
    /// Corner preimage A for the entire-function case.
    Entire {
        #[arg(long = "B")]
        b: f64,
        #[arg(long, default_value_t = 0.05)]
        h: f64,
    },
    /// Fixed point a = L_m(a) and the Lévy distance there.
    Levy {
        #[arg(long)]
        m: usize,
    },
    /// Full invariant suite; exits with 1 if any check fails.
    Verify {
        #[arg(long, value_parser = unit_open)]
        a: f64,
        #[arg(long)]
        m: usize,
    },
    /// Samples of p on [-1.05, 1.05] with the alternation points.
    Plot {
        #[arg(long, value_parser = unit_open)]
        a: f64,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
}

fn unit_open(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v < 1.0 {
        Ok(v)
    } else {
        Err(format!("{v} is not in (0, 1)"))
    }
}

enum Failure {
    Usage(String),
    Numeric(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e)
    }
}

fn sign_options(g: &Global) -> SignOptions {
    SignOptions {
        tol: g.tol.unwrap_or(1e-12),
        guard_bits: g.guard_bits,
        ..SignOptions::default()
    }
}

/// Sweeps and the fixed-point search default to `tol = 1e-20` and at
/// least 128 guard bits.
fn study_options(g: &Global) -> SignOptions {
    let base = SignOptions::asymptotic();
    SignOptions {
        tol: g.tol.unwrap_or(base.tol),
        guard_bits: g.guard_bits.max(base.guard_bits),
        ..base
    }
}

fn measured_c(g: &Global) -> Result<f64, Error> {
    if g.use_measured_c {
        Ok(constant_report(&MeshSpec::omega_star_default(), 1e-10)?.c_doubled)
    } else {
        Ok(C_EXACT)
    }
}

fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    let g = &cli.global;
    if let Some(t) = g.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Failure::Usage(format!("--tol {t} must be positive")));
        }
    }
    match &cli.command {
        Command::Solve { a, m } => {
            let res = solve_sign_poly(&Real::from_f64(*a, 64), *m, &sign_options(g))?;
            Ok((to_json(&SolveReport::from(&res))?, true))
        }
        Command::Sweep {
            a,
            m,
            m_min,
            bernstein,
        } => {
            if m_min > m {
                return Err(Failure::Usage(format!("--m-min {m_min} exceeds --m {m}")));
            }
            let kind = if *bernstein {
                SweepKind::Bernstein
            } else {
                SweepKind::Sign
            };
            let ms: Vec<usize> = (*m_min..=*m).collect();
            let mut a_sorted = a.clone();
            a_sorted.sort_by(f64::total_cmp);
            a_sorted.dedup();
            let c = measured_c(g)?;
            let mut reports = Vec::new();
            let mut rows_all = Vec::new();
            for &av in &a_sorted {
                let rows = sweep(kind, av, &ms, &study_options(g))?;
                let trend = trend_report(&rows)?;
                let ar = Real::from_f64(av, 64);
                let c_est = match (kind, trend.accelerated) {
                    (SweepKind::Sign, Some(lim)) => {
                        Some(c_from_limit(&ar, &Real::from_f64(lim, 64))?.to_f64())
                    }
                    _ => None,
                };
                let b_gaps: Vec<(usize, f64)> = if kind == SweepKind::Sign {
                    let cr = Real::from_f64(c, 64);
                    rows.iter()
                        .filter(|r| r.m >= 1)
                        .map(|r| Ok((r.m, r.b.to_f64() - b_m_predict(&ar, r.m, &cr)?.to_f64())))
                        .collect::<Result<_, Error>>()?
                } else {
                    Vec::new()
                };
                reports.push(serde_json::json!({
                    "a": av,
                    "kind": kind,
                    "c": c,
                    "c_from_trend": c_est,
                    "b_minus_prediction": b_gaps,
                    "sweep": SweepReport { rows: rows.clone(), trend },
                }));
                rows_all.extend(rows);
            }
            match g.format.unwrap_or(Format::Json) {
                Format::Csv => Ok((sweep_csv(&rows_all), true)),
                Format::Json => Ok((to_json(&reports)?, true)),
            }
        }
        Command::Constant { h } => {
            if !(*h > 0.0 && *h < 1.0) {
                return Err(Failure::Usage(format!("--h {h} must lie in (0, 1)")));
            }
            let mesh = MeshSpec {
                h: *h,
                ..MeshSpec::omega_star_default()
            };
            let rep = constant_report(&mesh, g.tol.unwrap_or(1e-10))?;
            Ok((to_json(&rep)?, true))
        }
        Command::Entire { b, h } => {
            if !(*b >= 1.0 && b.is_finite()) {
                return Err(Failure::Usage(format!("--B {b} must be at least 1")));
            }
            let opts = EntireOptions {
                h: *h,
                tol: g.tol.unwrap_or(1e-10),
                ..EntireOptions::default()
            };
            let sol = solve_entire(*b, &opts)?;
            Ok((to_json(&EntireReport::new(&sol)?)?, true))
        }
        Command::Levy { m } => {
            if *m == 0 {
                return Err(Failure::Usage("--m must be at least 1".into()));
            }
            let tol = g.tol.unwrap_or(1e-6);
            let opts = SignOptions {
                tol: 1e-20,
                ..study_options(g)
            };
            let point = levy_fixed_point(*m, tol, &opts)?;
            let predicted = predicted_fixed_point(*m, measured_c(g)?, 1e-12)?;
            let d = levy_distance(&point.solution.p, tol / 10.0)?.to_f64();
            let rep = LevyReport {
                point,
                predicted,
                levy_distance: d,
            };
            Ok((to_json(&rep)?, true))
        }
        Command::Verify { a, m } => {
            let rep = invariant_suite(&Real::from_f64(*a, 64), *m, &sign_options(g))?;
            Ok((to_json(&rep)?, rep.passed))
        }
        Command::Plot { a, m, samples } => {
            let res = solve_sign_poly(&Real::from_f64(*a, 64), *m, &sign_options(g))?;
            let data = plot_data(&res, *samples)?;
            match g.format.unwrap_or(Format::Csv) {
                Format::Csv => Ok((data.to_csv(), true)),
                Format::Json => Ok((to_json(&data)?, true)),
            }
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> std::io::Result<()> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.global.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.global.jobs)
            .build_global()
        {
            eprintln!("{}", error_json(&Error::Internal(e.to_string())));
            return ExitCode::from(1);
        }
    }
    let result = run(&cli);
    let (text, ok) = match result {
        Ok(v) => v,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Numeric(e)) => {
            eprintln!("{}", error_json(&e));
            return ExitCode::from(1);
        }
    };
    if let Err(e) = emit(&cli.global.out, &text) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return ExitCode::SUCCESS;
        }
        eprintln!("{}", error_json(&Error::Internal(e.to_string())));
        return ExitCode::from(1);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
