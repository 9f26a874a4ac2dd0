use super::normal::{std_quantile, truncated_exponential, truncated_std_normal};
use super::sampler::Sampler;
use super::{Moments, Region};
use crate::error::{Error, Result};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Density of an uncertain object. Parametric variants are products of
/// independent one-dimensional densities renormalized over their box.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PdfSpec {
    Uniform {
        #[serde(flatten)]
        region: Region,
    },
    #[serde(rename = "normal")]
    TruncatedNormal {
        mean: Vec<f64>,
        stddev: Vec<f64>,
        #[serde(flatten)]
        region: Region,
    },
    /// Density ∝ rate·exp(−rate·(x − origin)) for x ≥ origin, per dimension.
    #[serde(rename = "exponential")]
    TruncatedExponential {
        origin: Vec<f64>,
        rate: Vec<f64>,
        #[serde(flatten)]
        region: Region,
    },
    /// Discrete distribution over weighted sample points.
    Empirical {
        points: Vec<Vec<f64>>,
        weights: Vec<f64>,
    },
}

const WEIGHT_SUM_TOLERANCE: f64 = 1e-12;

impl PdfSpec {
    pub fn uniform(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        let pdf = PdfSpec::Uniform {
            region: Region::new(lo, hi)?,
        };
        pdf.validate()?;
        Ok(pdf)
    }

    /// Degenerate density concentrated at `p`.
    pub fn point_mass(p: &[f64]) -> Self {
        PdfSpec::Uniform {
            region: Region::point(p),
        }
    }

    pub fn empirical(points: Vec<Vec<f64>>, weights: Vec<f64>) -> Result<Self> {
        let pdf = PdfSpec::Empirical { points, weights };
        pdf.validate()?;
        Ok(pdf)
    }

    /// Empirical density with equal weights.
    pub fn empirical_uniform(points: Vec<Vec<f64>>) -> Result<Self> {
        let n = points.len();
        if n == 0 {
            return Err(Error::InvalidPdf(
                "empirical pdf needs at least one point".into(),
            ));
        }
        Self::empirical(points, vec![1.0 / n as f64; n])
    }

    pub fn dim(&self) -> usize {
        match self {
            PdfSpec::Uniform { region }
            | PdfSpec::TruncatedNormal { region, .. }
            | PdfSpec::TruncatedExponential { region, .. } => region.dim(),
            PdfSpec::Empirical { points, .. } => points.first().map_or(0, Vec::len),
        }
    }

    /// Checks the variant invariants and returns the dimensionality.
    pub fn validate(&self) -> Result<usize> {
        match self {
            PdfSpec::Uniform { region } => {
                region.validate()?;
                if !region.is_bounded() {
                    return Err(Error::InvalidPdf("uniform pdf needs a bounded box".into()));
                }
                Ok(region.dim())
            }
            PdfSpec::TruncatedNormal {
                mean,
                stddev,
                region,
            } => {
                region.validate()?;
                let m = region.dim();
                check_len("mean", mean, m)?;
                check_len("stddev", stddev, m)?;
                if mean.iter().any(|v| !v.is_finite()) {
                    return Err(Error::InvalidPdf("normal mean must be finite".into()));
                }
                if stddev.iter().any(|&s| !(s > 0.0 && s.is_finite())) {
                    return Err(Error::InvalidPdf(
                        "normal stddev must be positive and finite".into(),
                    ));
                }
                Ok(m)
            }
            PdfSpec::TruncatedExponential {
                origin,
                rate,
                region,
            } => {
                region.validate()?;
                let m = region.dim();
                check_len("origin", origin, m)?;
                check_len("rate", rate, m)?;
                if origin.iter().any(|v| !v.is_finite()) {
                    return Err(Error::InvalidPdf(
                        "exponential origin must be finite".into(),
                    ));
                }
                if rate.iter().any(|&r| !(r > 0.0 && r.is_finite())) {
                    return Err(Error::InvalidPdf(
                        "exponential rate must be positive and finite".into(),
                    ));
                }
                for j in 0..m {
                    if region.lo[j] < origin[j] {
                        return Err(Error::DegenerateSupport(format!(
                            "exponential density is zero below origin {} but box starts at {} in dimension {j}",
                            origin[j], region.lo[j]
                        )));
                    }
                    if region.lo[j].is_infinite() {
                        return Err(Error::DegenerateSupport(format!(
                            "exponential box has no finite lower bound in dimension {j}"
                        )));
                    }
                }
                Ok(m)
            }
            PdfSpec::Empirical { points, weights } => {
                if points.is_empty() {
                    return Err(Error::InvalidPdf(
                        "empirical pdf needs at least one point".into(),
                    ));
                }
                if points.len() != weights.len() {
                    return Err(Error::InvalidPdf(format!(
                        "{} points but {} weights",
                        points.len(),
                        weights.len()
                    )));
                }
                let m = points[0].len();
                if m == 0 {
                    return Err(Error::InvalidPdf(
                        "empirical points must have at least one dimension".into(),
                    ));
                }
                for p in points {
                    if p.len() != m {
                        return Err(Error::dims(m, p.len()));
                    }
                    if p.iter().any(|v| !v.is_finite()) {
                        return Err(Error::InvalidPdf("empirical points must be finite".into()));
                    }
                }
                if weights.iter().any(|&w| !(w >= 0.0 && w.is_finite())) {
                    return Err(Error::InvalidPdf(
                        "empirical weights must be nonnegative".into(),
                    ));
                }
                let total: f64 = weights.iter().sum();
                if (total - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
                    return Err(Error::InvalidPdf(format!(
                        "empirical weights sum to {total}, not 1"
                    )));
                }
                Ok(m)
            }
        }
    }

    /// Domain region; for empirical pdfs the tight bounding box of the points.
    pub fn support(&self) -> Result<Region> {
        match self {
            PdfSpec::Uniform { region }
            | PdfSpec::TruncatedNormal { region, .. }
            | PdfSpec::TruncatedExponential { region, .. } => Ok(region.clone()),
            PdfSpec::Empirical { points, .. } => Region::bounding(points),
        }
    }

    /// Analytic expected value, second-order moment and variance.
    ///
    /// A dimension with `lo == hi` is a point mass in that coordinate.
    pub fn moments(&self) -> Result<Moments> {
        let m = self.validate()?;
        match self {
            PdfSpec::Uniform { region } => {
                let (mu, var) = (0..m)
                    .map(|j| {
                        let (l, h) = (region.lo[j], region.hi[j]);
                        let w = h - l;
                        (0.5 * (l + h), w * w / 12.0)
                    })
                    .unzip();
                Ok(Moments::from_mean_var(mu, var))
            }
            PdfSpec::TruncatedNormal {
                mean,
                stddev,
                region,
            } => {
                let mut mu = Vec::with_capacity(m);
                let mut var = Vec::with_capacity(m);
                for j in 0..m {
                    let (l, h) = (region.lo[j], region.hi[j]);
                    if l == h {
                        mu.push(l);
                        var.push(0.0);
                        continue;
                    }
                    let s = stddev[j];
                    let alpha = (l - mean[j]) / s;
                    let beta = (h - mean[j]) / s;
                    let (zm, zv) = truncated_std_normal(alpha, beta).ok_or_else(|| {
                        Error::DegenerateSupport(format!(
                            "box [{l}, {h}] carries no normal mass in dimension {j}"
                        ))
                    })?;
                    mu.push((mean[j] + s * zm).clamp(l, h));
                    var.push(s * s * zv);
                }
                Ok(Moments::from_mean_var(mu, var))
            }
            PdfSpec::TruncatedExponential { rate, region, .. } => {
                let (mu, var) = (0..m)
                    .map(|j| {
                        let (l, h) = (region.lo[j], region.hi[j]);
                        let (tm, tv) = truncated_exponential(rate[j], h - l);
                        (l + tm, tv)
                    })
                    .unzip();
                Ok(Moments::from_mean_var(mu, var))
            }
            PdfSpec::Empirical { points, weights } => {
                let mut mu = vec![0.0; m];
                let mut mu2 = vec![0.0; m];
                for (p, &w) in points.iter().zip(weights) {
                    for j in 0..m {
                        mu[j] += w * p[j];
                        mu2[j] += w * p[j] * p[j];
                    }
                }
                Ok(Moments::from_raw(mu, mu2))
            }
        }
    }

    /// One draw from the density.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Vec<f64>> {
        let sampler = Sampler::new(self)?;
        let mut out = vec![0.0; self.dim()];
        sampler.draw_into(self, rng, &mut out)?;
        Ok(out)
    }
}

fn check_len(name: &str, v: &[f64], m: usize) -> Result<()> {
    if v.len() != m {
        return Err(Error::InvalidPdf(format!(
            "{name} has {} entries, region has {m} dimensions",
            v.len()
        )));
    }
    Ok(())
}

/// Untruncated parametric description attached to a deterministic point
/// before it is turned into an uncertain object.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SourcePdf {
    Uniform {
        #[serde(flatten)]
        region: Region,
    },
    Normal {
        mean: Vec<f64>,
        stddev: Vec<f64>,
    },
    Exponential {
        origin: Vec<f64>,
        rate: Vec<f64>,
    },
}

impl SourcePdf {
    pub fn dim(&self) -> usize {
        match self {
            SourcePdf::Uniform { region } => region.dim(),
            SourcePdf::Normal { mean, .. } => mean.len(),
            SourcePdf::Exponential { origin, .. } => origin.len(),
        }
    }

    /// Expected value of the untruncated density.
    pub fn mean(&self) -> Vec<f64> {
        match self {
            SourcePdf::Uniform { region } => region
                .lo
                .iter()
                .zip(&region.hi)
                .map(|(l, h)| 0.5 * (l + h))
                .collect(),
            SourcePdf::Normal { mean, .. } => mean.clone(),
            SourcePdf::Exponential { origin, rate } => {
                origin.iter().zip(rate).map(|(o, r)| o + 1.0 / r).collect()
            }
        }
    }

    /// Per-dimension interval holding `coverage` of the mass: central for
    /// normals, lower (starting at the origin) for exponentials. A uniform
    /// density keeps its own box.
    pub fn mass_region(&self, coverage: f64) -> Result<Region> {
        if !(coverage > 0.0 && coverage <= 1.0) {
            return Err(Error::Argument(format!(
                "coverage {coverage} outside (0, 1]"
            )));
        }
        match self {
            SourcePdf::Uniform { region } => Ok(region.clone()),
            SourcePdf::Normal { mean, stddev } => {
                let z = std_quantile(0.5 + 0.5 * coverage);
                let lo = mean.iter().zip(stddev).map(|(m, s)| m - z * s).collect();
                let hi = mean.iter().zip(stddev).map(|(m, s)| m + z * s).collect();
                Region::new(lo, hi)
            }
            SourcePdf::Exponential { origin, rate } => {
                let hi = origin
                    .iter()
                    .zip(rate)
                    .map(|(o, r)| o - (-coverage).ln_1p() / r)
                    .collect();
                Region::new(origin.clone(), hi)
            }
        }
    }

    /// Renormalizes the density over `region`.
    pub fn restrict(&self, region: Region) -> Result<PdfSpec> {
        let pdf = match self {
            SourcePdf::Uniform { .. } => PdfSpec::Uniform { region },
            SourcePdf::Normal { mean, stddev } => PdfSpec::TruncatedNormal {
                mean: mean.clone(),
                stddev: stddev.clone(),
                region,
            },
            SourcePdf::Exponential { origin, rate } => PdfSpec::TruncatedExponential {
                origin: origin.clone(),
                rate: rate.clone(),
                region,
            },
        };
        pdf.validate()?;
        Ok(pdf)
    }

    /// One draw from the untruncated density.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        match self {
            SourcePdf::Uniform { region } => region
                .lo
                .iter()
                .zip(&region.hi)
                .map(|(&l, &h)| (l + rng.random::<f64>() * (h - l)).clamp(l, h))
                .collect(),
            SourcePdf::Normal { mean, stddev } => mean
                .iter()
                .zip(stddev)
                .map(|(m, s)| m + s * std_quantile(open_unit(rng)))
                .collect(),
            SourcePdf::Exponential { origin, rate } => origin
                .iter()
                .zip(rate)
                .map(|(o, r)| o - (-open_unit(rng)).ln_1p() / r)
                .collect(),
        }
    }
}

/// Uniform draw from the open interval (0, 1).
fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return u;
        }
    }
}
