use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Graded mesh on `[lo, hi]`: uniform spacing `h`, plus geometric
/// refinement around each point `c` of `refine` with nodes `c ± d_k`,
/// `d_0 = min_offset`, `d_{k+1} = d_k / ratio`, continued until the local
/// spacing reaches `h`; plus the nodes in `extra`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeshSpec {
    pub h: f64,
    pub lo: f64,
    pub hi: f64,
    pub refine: Vec<f64>,
    pub min_offset: f64,
    pub ratio: f64,
    pub extra: Vec<f64>,
}

impl MeshSpec {
    pub fn uniform(h: f64, lo: f64, hi: f64) -> MeshSpec {
        MeshSpec {
            h,
            lo,
            hi,
            refine: Vec::new(),
            min_offset: 1e-7,
            ratio: 0.925,
            extra: Vec::new(),
        }
    }

    /// Mesh used for the region above `arccos(e^{-x})`: spacing 0.05 on
    /// `[-40, 40]`, graded at 0, with a node at 2.
    pub fn omega_star_default() -> MeshSpec {
        MeshSpec::uniform(0.05, -40.0, 40.0)
            .refine_at(0.0)
            .with_node(2.0)
    }

    pub fn refine_at(mut self, c: f64) -> MeshSpec {
        self.refine.push(c);
        self
    }

    pub fn with_node(mut self, t: f64) -> MeshSpec {
        self.extra.push(t);
        self
    }

    /// Same mesh with half the spacing.
    pub fn doubled(&self) -> MeshSpec {
        MeshSpec {
            h: 0.5 * self.h,
            ..self.clone()
        }
    }

    /// Mesh with every coordinate multiplied by `s > 0`.
    pub fn scaled(&self, s: f64) -> MeshSpec {
        MeshSpec {
            h: self.h * s,
            lo: self.lo * s,
            hi: self.hi * s,
            refine: self.refine.iter().map(|c| c * s).collect(),
            min_offset: self.min_offset * s,
            extra: self.extra.iter().map(|c| c * s).collect(),
            ..self.clone()
        }
    }

    /// Moves the tail starts by `dlo` and `dhi`.
    pub fn widened(&self, dlo: f64, dhi: f64) -> MeshSpec {
        MeshSpec {
            lo: self.lo - dlo,
            hi: self.hi + dhi,
            ..self.clone()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(Error::Resolution(format!(
                "mesh spacing {} must be positive",
                self.h
            )));
        }
        if !(self.lo < 0.0 && self.hi > 0.0) {
            return Err(Error::Resolution(format!(
                "mesh [{}, {}] must contain 0 in its interior",
                self.lo, self.hi
            )));
        }
        if !(self.ratio > 0.0 && self.ratio < 1.0) {
            return Err(Error::Resolution(format!(
                "grading ratio {} must lie in (0, 1)",
                self.ratio
            )));
        }
        if !(self.min_offset > 0.0 && self.min_offset < self.h) {
            return Err(Error::Resolution(format!(
                "grading offset {} must lie in (0, h)",
                self.min_offset
            )));
        }
        Ok(())
    }

    /// Sorted nodes; always includes `lo`, `0` and `hi`. Uniform nodes
    /// closer than `h/2` to a graded zone are dropped.
    pub fn nodes(&self) -> Vec<f64> {
        let n = ((self.hi - self.lo) / self.h).round().max(1.0) as usize;
        let step = (self.hi - self.lo) / n as f64;
        let growth = 1.0 / self.ratio - 1.0;
        let mut zones = Vec::new();
        let mut graded = Vec::new();
        for &c in &self.refine {
            graded.push(c);
            let mut d = self.min_offset;
            let mut reach = 0.0;
            while d * growth < self.h {
                graded.push(c - d);
                graded.push(c + d);
                reach = d;
                d /= self.ratio;
            }
            zones.push((c, reach + 0.5 * self.h));
        }
        let mut pts: Vec<f64> = (0..=n)
            .map(|i| self.lo + step * i as f64)
            .filter(|t| zones.iter().all(|&(c, r)| (t - c).abs() >= r))
            .collect();
        pts.push(self.lo);
        pts.push(self.hi);
        pts.push(0.0);
        pts.extend(graded);
        pts.extend(self.extra.iter().copied());
        pts.retain(|t| *t >= self.lo && *t <= self.hi);
        pts.sort_by(|a, b| a.partial_cmp(b).expect("finite nodes"));
        let mut out: Vec<f64> = Vec::with_capacity(pts.len());
        for t in pts {
            match out.last() {
                Some(&prev) if (t - prev).abs() <= 1e-13 * (1.0 + t.abs()) => {
                    // keep exact special nodes (0, refinement centres, extras)
                    if self.is_special(t) {
                        *out.last_mut().expect("non-empty") = t;
                    }
                }
                _ => out.push(t),
            }
        }
        out
    }

    fn is_special(&self, t: f64) -> bool {
        t == 0.0 || self.refine.contains(&t) || self.extra.contains(&t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_mesh_shape() {
        let m = MeshSpec::omega_star_default();
        let t = m.nodes();
        assert_eq!(t[0], -40.0);
        assert_eq!(*t.last().unwrap(), 40.0);
        assert!(t.contains(&0.0) && t.contains(&2.0));
        assert!(t.windows(2).all(|w| w[0] < w[1]));
        let closest = t
            .iter()
            .filter(|x| **x > 0.0)
            .fold(f64::INFINITY, |a, &b| a.min(b));
        assert_eq!(closest, 1e-7);
        // spacing grows geometrically away from the corner, capped at h
        let right: Vec<f64> = t.iter().copied().filter(|x| *x > 0.0 && *x < 1.0).collect();
        for w in right.windows(3) {
            let (s0, s1) = (w[1] - w[0], w[2] - w[1]);
            assert!(s1 <= 0.075 + 1e-12 && (s1 <= s0 / 0.925 + 1e-12 || s1 <= 0.075));
        }
        let d = m.doubled().nodes();
        assert!(d.len() > t.len() + 1500);
    }

    #[test]
    fn scaling_scales_nodes() {
        let m = MeshSpec::uniform(0.1, -5.0, 5.0).refine_at(1.0);
        let a = m.nodes();
        let b = m.scaled(0.5).nodes();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert!((0.5 * x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn invalid_meshes() {
        assert!(MeshSpec::uniform(0.0, -1.0, 1.0).validate().is_err());
        assert!(MeshSpec::uniform(0.1, 0.5, 1.0).validate().is_err());
        assert!(MeshSpec::uniform(0.1, -1.0, 1.0).validate().is_ok());
    }
}
