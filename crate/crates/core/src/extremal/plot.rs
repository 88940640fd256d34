use std::fmt::Write;

use serde::Serialize;

use crate::error::Result;
use crate::remez::{alternation_count, SignPolyResult};
use crate::scalar::Real;

#[derive(Clone, Debug, Serialize)]
pub struct PlotRow {
    pub x: f64,
    pub p: f64,
    pub alternant: bool,
}

/// Samples of `p` on `[-1.05, 1.05]` together with the alternation points.
#[derive(Clone, Debug, Serialize)]
pub struct PlotData {
    pub rows: Vec<PlotRow>,
    /// Alternating extrema of `p - sgn` on `[-1, -a] ∪ [a, 1]`.
    pub extrema: usize,
}

impl PlotData {
    /// CSV with header `x,p,alternant`; rows sorted by `x`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,p,alternant\n");
        for r in &self.rows {
            writeln!(out, "{:.12e},{:.12e},{}", r.x, r.p, r.alternant as u8).expect("string write");
        }
        out
    }
}

pub fn plot_data(result: &SignPolyResult, samples: usize) -> Result<PlotData> {
    let prec = result.prec();
    let n = samples.max(2);
    let mut rows: Vec<PlotRow> = (0..n)
        .map(|i| {
            let x = -1.05 + 2.1 * i as f64 / (n - 1) as f64;
            PlotRow {
                x,
                p: result.p.eval(&Real::from_f64(x, prec)).to_f64(),
                alternant: false,
            }
        })
        .collect();
    for x in &result.alternants {
        let v = result.p.eval(x).to_f64();
        rows.push(PlotRow {
            x: x.to_f64(),
            p: v,
            alternant: true,
        });
        rows.push(PlotRow {
            x: -x.to_f64(),
            p: -v,
            alternant: true,
        });
    }
    rows.sort_by(|u, v| u.x.total_cmp(&v.x));
    let grid = (64 * result.m).max(400);
    Ok(PlotData {
        rows,
        extrema: alternation_count(&result.p, &result.l, 1e-6, grid),
    })
}
