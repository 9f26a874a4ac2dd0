//! Uncertain-object representation: box regions, pdf families, analytic
//! moments, sampling, and dataset files.

mod dataset;
pub mod io;
pub(crate) mod normal;
mod pdf;
mod sampler;

pub use dataset::{Dataset, UncertainObject};
pub use pdf::{PdfSpec, SourcePdf};
pub use sampler::Sampler;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Axis-aligned box `[lo_1, hi_1] × … × [lo_m, hi_m]`.
///
/// Bounds may be infinite (an unbounded pdf restricted to full coverage) but
/// never NaN.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl Region {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        let region = Region { lo, hi };
        region.validate()?;
        Ok(region)
    }

    /// Degenerate box at a single point.
    pub fn point(p: &[f64]) -> Self {
        Region {
            lo: p.to_vec(),
            hi: p.to_vec(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.lo.is_empty() {
            return Err(Error::Argument(
                "region must have at least one dimension".into(),
            ));
        }
        if self.lo.len() != self.hi.len() {
            return Err(Error::dims(self.lo.len(), self.hi.len()));
        }
        for (j, (&l, &h)) in self.lo.iter().zip(&self.hi).enumerate() {
            if l.is_nan() || h.is_nan() {
                return Err(Error::Argument(format!(
                    "region bound is NaN in dimension {j}"
                )));
            }
            if l > h {
                return Err(Error::Argument(format!(
                    "region lower bound {l} exceeds upper bound {h} in dimension {j}"
                )));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn is_bounded(&self) -> bool {
        self.lo.iter().chain(&self.hi).all(|v| v.is_finite())
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x.iter()
                .zip(self.lo.iter().zip(&self.hi))
                .all(|(&v, (&l, &h))| l <= v && v <= h)
    }

    /// Tight bounding box of a non-empty point set.
    pub fn bounding(points: &[Vec<f64>]) -> Result<Self> {
        let first = points
            .first()
            .ok_or_else(|| Error::Argument("bounding box of an empty point set".into()))?;
        let mut lo = first.clone();
        let mut hi = first.clone();
        for p in &points[1..] {
            if p.len() != lo.len() {
                return Err(Error::dims(lo.len(), p.len()));
            }
            for j in 0..p.len() {
                lo[j] = lo[j].min(p[j]);
                hi[j] = hi[j].max(p[j]);
            }
        }
        Region::new(lo, hi)
    }
}

/// Per-dimension moments of an uncertain object.
///
/// `var[j] = mu2[j] - mu[j]²` and `total_var = Σ var[j]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub mu: Vec<f64>,
    pub mu2: Vec<f64>,
    pub var: Vec<f64>,
    pub total_var: f64,
}

impl Moments {
    /// Assembles moments from expected values and variances; negative
    /// variances from rounding are clamped to zero.
    pub fn from_mean_var(mu: Vec<f64>, var: Vec<f64>) -> Self {
        let var: Vec<f64> = var.into_iter().map(clamp_variance).collect();
        let mu2 = mu.iter().zip(&var).map(|(m, v)| v + m * m).collect();
        let total_var = var.iter().sum();
        Moments {
            mu,
            mu2,
            var,
            total_var,
        }
    }

    /// Assembles moments from expected values and second-order moments.
    pub fn from_raw(mu: Vec<f64>, mu2: Vec<f64>) -> Self {
        let var: Vec<f64> = mu
            .iter()
            .zip(&mu2)
            .map(|(m, m2)| clamp_variance(m2 - m * m))
            .collect();
        let total_var = var.iter().sum();
        Moments {
            mu,
            mu2,
            var,
            total_var,
        }
    }

    pub fn dim(&self) -> usize {
        self.mu.len()
    }

    /// Σ_j (μ₂)_j.
    pub fn total_mu2(&self) -> f64 {
        self.mu2.iter().sum()
    }
}

fn clamp_variance(v: f64) -> f64 {
    if v < 0.0 {
        if v < -1e-12 {
            log::warn!("negative variance {v:e} from cancellation clamped to 0");
        }
        0.0
    } else {
        v
    }
}

/// Squared Euclidean distance.
pub fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}
