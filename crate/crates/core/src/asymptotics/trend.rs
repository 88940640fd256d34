use rayon::prelude::*;
use serde::Serialize;

use super::laws::{bern_scaled, bern_target, t1_scaled, t1_target};
use crate::error::{Error, Result};
use crate::remez::{solve_bernstein, solve_sign_poly, SignOptions};
use crate::scalar::Real;

/// Which error is swept over `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    /// Sign problem, scaled by `sqrt(m) ((1 + a)/(1 - a))^m`.
    Sign,
    /// Unweighted approximation of `1/sqrt(x)` on `[a^2, 1]`, same scaling.
    Bernstein,
}

/// One solver run of a sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub m: usize,
    pub a: f64,
    #[serde(rename = "L")]
    pub l: Real,
    /// `arccosh(1/L)`.
    #[serde(rename = "B")]
    pub b: Real,
    pub scaled: Real,
    pub target: Real,
    /// `|scaled - target| / target`.
    pub gap: f64,
}

impl SweepRow {
    pub const CSV_HEADER: &'static str = "m,a,L,B,scaled,target,gap";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:e}",
            self.m,
            self.a,
            self.l.to_decimal(20),
            self.b.to_decimal(20),
            self.scaled.to_decimal(12),
            self.target.to_decimal(12),
            self.gap
        )
    }
}

fn sweep_one(kind: SweepKind, a: f64, m: usize, opts: &SignOptions) -> Result<SweepRow> {
    let a_in = Real::from_f64(a, 64);
    let (l, prec) = match kind {
        SweepKind::Sign => {
            let res = solve_sign_poly(&a_in, m, opts)?;
            let p = res.prec();
            (res.l, p)
        }
        SweepKind::Bernstein => {
            let res = solve_bernstein(&a_in, m, opts)?;
            let p = res.l.prec();
            (res.l, p)
        }
    };
    let a_w = Real::from_f64(a, prec);
    let (scaled, target) = match kind {
        SweepKind::Sign => (t1_scaled(&a_w, m, &l)?, t1_target(&a_w)?),
        SweepKind::Bernstein => (bern_scaled(&a_w, m, &l)?, bern_target(&a_w)?),
    };
    let gap = ((&scaled - &target) / &target).abs().to_f64();
    let b = (Real::one(prec) / &l).acosh();
    Ok(SweepRow {
        m,
        a,
        l,
        b,
        scaled,
        target,
        gap,
    })
}

/// Solves for every `m` in `ms` (in parallel on the current rayon pool)
/// and returns the rows in the order of `ms`.
pub fn sweep(kind: SweepKind, a: f64, ms: &[usize], opts: &SignOptions) -> Result<Vec<SweepRow>> {
    ms.par_iter()
        .map(|&m| sweep_one(kind, a, m, opts))
        .collect()
}

/// `x_2 - (x_2 - x_1)^2 / (x_2 - 2 x_1 + x_0)`; `None` for a zero second
/// difference.
pub fn aitken(x0: f64, x1: f64, x2: f64) -> Option<f64> {
    let d2 = x2 - 2.0 * x1 + x0;
    if d2 == 0.0 || !d2.is_finite() {
        return None;
    }
    Some(x2 - (x2 - x1) * (x2 - x1) / d2)
}

/// Convergence summary of a scaled sequence.
#[derive(Clone, Debug, Serialize)]
pub struct TrendReport {
    /// `(m, scaled)`.
    pub samples: Vec<(usize, f64)>,
    pub target: f64,
    pub last_gap: f64,
    /// Whether the second half of the samples is monotone.
    pub monotone_tail: bool,
    /// Aitken values over index triples `(m, 2m, 4m)`, keyed by `4m`.
    pub aitken: Vec<(usize, f64)>,
    /// Last entry of `aitken`, if any.
    pub accelerated: Option<f64>,
    /// `|accelerated - target| / target`.
    pub accelerated_gap: Option<f64>,
}

pub fn trend_report(rows: &[SweepRow]) -> Result<TrendReport> {
    let last = rows
        .last()
        .ok_or_else(|| Error::Precondition("empty sweep".into()))?;
    let samples: Vec<(usize, f64)> = rows.iter().map(|r| (r.m, r.scaled.to_f64())).collect();
    let target = last.target.to_f64();
    let tail = &samples[samples.len() / 2..];
    let up = tail.windows(2).all(|w| w[1].1 >= w[0].1);
    let down = tail.windows(2).all(|w| w[1].1 <= w[0].1);
    let value = |m: usize| samples.iter().find(|s| s.0 == m).map(|s| s.1);
    let mut acc = Vec::new();
    for &(m, _) in &samples {
        if m == 0 {
            continue;
        }
        if let (Some(x0), Some(x1), Some(x2)) = (value(m), value(2 * m), value(4 * m)) {
            if let Some(v) = aitken(x0, x1, x2) {
                acc.push((4 * m, v));
            }
        }
    }
    acc.sort_by_key(|e| e.0);
    let accelerated = acc.last().map(|e| e.1);
    Ok(TrendReport {
        last_gap: (samples[samples.len() - 1].1 - target).abs(),
        samples,
        target,
        monotone_tail: up || down,
        accelerated_gap: accelerated.map(|v| (v - target).abs() / target),
        accelerated,
        aitken: acc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aitken_is_exact_on_geometric_tails() {
        let s = |n: i32| 2.0 + 3.0 * 0.5f64.powi(n);
        assert!((aitken(s(1), s(2), s(3)).unwrap() - 2.0).abs() < 1e-14);
        assert!(aitken(1.0, 1.0, 1.0).is_none());
    }

    fn fake_rows(f: impl Fn(usize) -> f64, ms: &[usize]) -> Vec<SweepRow> {
        ms.iter()
            .map(|&m| SweepRow {
                m,
                a: 0.5,
                l: Real::from_f64(0.1, 64),
                b: Real::from_f64(3.0, 64),
                scaled: Real::from_f64(f(m), 64),
                target: Real::from_f64(1.0, 64),
                gap: (f(m) - 1.0).abs(),
            })
            .collect()
    }

    #[test]
    fn doubling_triples_remove_a_one_over_m_term() {
        let ms: Vec<usize> = (5..=40).collect();
        let rows = fake_rows(|m| 1.0 - 0.8 / m as f64, &ms);
        let rep = trend_report(&rows).unwrap();
        assert!(rep.monotone_tail);
        assert_eq!(rep.aitken.last().unwrap().0, 40);
        assert!(rep.accelerated_gap.unwrap() < 1e-12);
        assert!((rep.last_gap - 0.02).abs() < 1e-12);
    }

    #[test]
    fn oscillating_tail_is_flagged() {
        let ms: Vec<usize> = (1..=8).collect();
        let rows = fake_rows(|m| 1.0 + if m % 2 == 0 { 0.1 } else { -0.1 }, &ms);
        assert!(!trend_report(&rows).unwrap().monotone_tail);
        assert!(trend_report(&[]).is_err());
    }

    #[test]
    fn small_sign_sweep() {
        let opts = SignOptions::default();
        let rows = sweep(SweepKind::Sign, 0.5, &[1, 2, 4], &opts).unwrap();
        assert_eq!(rows.iter().map(|r| r.m).collect::<Vec<_>>(), vec![1, 2, 4]);
        assert!(rows[0].l > rows[1].l && rows[1].l > rows[2].l);
        let line = rows[0].to_csv();
        assert_eq!(line.split(',').count(), 7);
        let bern = sweep(SweepKind::Bernstein, 0.5, &[0], &opts).unwrap();
        assert!((bern[0].l.to_f64() - 0.5).abs() < 1e-12);
    }
}
