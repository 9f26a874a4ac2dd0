//! Synthetic uncertainty: attach a density to every deterministic point,
//! then derive a perturbed deterministic dataset and an uncertain one from
//! the same assignment.

use crate::error::{Error, Result};
use crate::model::{Dataset, PdfSpec, Region, SourcePdf, UncertainObject};
use crate::rng::{derive_seed, derived};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Uniform,
    Normal,
    Exponential,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "uniform" => Ok(Family::Uniform),
            "normal" => Ok(Family::Normal),
            "exponential" => Ok(Family::Exponential),
            other => Err(Error::Argument(format!("unknown pdf family '{other}'"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Uniform => "uniform",
            Family::Normal => "normal",
            Family::Exponential => "exponential",
        })
    }
}

/// Closed interval of scale factors, relative to each dimension's data range.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
}

impl Range {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Range { lo, hi }
    }

    fn validate(&self, what: &str) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo > 0.0 && self.lo <= self.hi) {
            return Err(Error::Argument(format!(
                "{what} range [{}, {}] must be positive, finite and ordered",
                self.lo, self.hi
            )));
        }
        Ok(())
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.lo + rng.random::<f64>() * (self.hi - self.lo)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub family: Family,
    /// Uniform half-width, as a fraction of the dimension's range.
    pub uniform_half_width: Range,
    /// Normal standard deviation, as a fraction of the dimension's range.
    pub normal_stddev: Range,
    /// Exponential mean offset 1/rate, as a fraction of the dimension's range.
    pub exponential_scale: Range,
    pub coverage: f64,
    pub seed: u64,
}

impl GenConfig {
    pub fn new(family: Family, seed: u64) -> Self {
        GenConfig {
            family,
            uniform_half_width: Range::new(0.05, 0.25),
            normal_stddev: Range::new(0.02, 0.10),
            exponential_scale: Range::new(0.02, 0.10),
            coverage: 0.95,
            seed,
        }
    }

    pub fn with_coverage(mut self, coverage: f64) -> Self {
        self.coverage = coverage;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.uniform_half_width.validate("uniform half-width")?;
        self.normal_stddev.validate("normal stddev")?;
        self.exponential_scale.validate("exponential scale")?;
        if !(self.coverage > 0.0 && self.coverage <= 1.0) {
            return Err(Error::Argument(format!(
                "coverage {} outside (0, 1]",
                self.coverage
            )));
        }
        Ok(())
    }
}

/// Per-dimension data range; constant dimensions get scale 1 so that their
/// objects still carry some uncertainty.
fn dimension_scales(points: &[Vec<f64>]) -> Vec<f64> {
    let m = points[0].len();
    (0..m)
        .map(|j| {
            let (lo, hi) = points
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), p| {
                    (l.min(p[j]), h.max(p[j]))
                });
            let r = hi - lo;
            if r > 0.0 && r.is_finite() {
                r
            } else {
                1.0
            }
        })
        .collect()
}

fn check_points(points: &[Vec<f64>]) -> Result<usize> {
    let m = points
        .first()
        .ok_or_else(|| Error::Argument("no points to generate from".into()))?
        .len();
    if m == 0 {
        return Err(Error::Argument("points have no coordinates".into()));
    }
    for p in points {
        if p.len() != m {
            return Err(Error::dims(m, p.len()));
        }
        if p.iter().any(|x| !x.is_finite()) {
            return Err(Error::Argument(
                "points must have finite coordinates".into(),
            ));
        }
    }
    Ok(m)
}

/// One untruncated density per point, each with expected value equal to the
/// point. Parameters for point i come from the stream derived from
/// (`cfg.seed`, i), so the result does not depend on thread scheduling.
pub fn assign_pdfs(points: &[Vec<f64>], cfg: &GenConfig) -> Result<Vec<SourcePdf>> {
    cfg.validate()?;
    check_points(points)?;
    let scales = dimension_scales(points);
    let pdfs = points
        .par_iter()
        .enumerate()
        .map(|(i, w)| {
            let mut rng = derived(cfg.seed, i as u64);
            let params: Vec<f64> = scales
                .iter()
                .map(|s| {
                    let range = match cfg.family {
                        Family::Uniform => cfg.uniform_half_width,
                        Family::Normal => cfg.normal_stddev,
                        Family::Exponential => cfg.exponential_scale,
                    };
                    range.draw(&mut rng) * s
                })
                .collect();
            match cfg.family {
                Family::Uniform => {
                    let lo = w.iter().zip(&params).map(|(x, h)| x - h).collect();
                    let hi = w.iter().zip(&params).map(|(x, h)| x + h).collect();
                    Ok(SourcePdf::Uniform {
                        region: Region::new(lo, hi)?,
                    })
                }
                Family::Normal => Ok(SourcePdf::Normal {
                    mean: w.clone(),
                    stddev: params,
                }),
                Family::Exponential => Ok(SourcePdf::Exponential {
                    origin: w.iter().zip(&params).map(|(x, b)| x - b).collect(),
                    rate: params.iter().map(|b| 1.0 / b).collect(),
                }),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(pdfs)
}

/// The perturbed dataset: each point replaced by one draw from its density.
pub fn perturb(pdfs: &[SourcePdf], seed: u64) -> Vec<Vec<f64>> {
    // a separate stream family from the one used for parameter draws
    let base = derive_seed(seed, u64::MAX);
    pdfs.par_iter()
        .enumerate()
        .map(|(i, pdf)| pdf.sample(&mut derived(base, i as u64)))
        .collect()
}

/// The uncertain dataset: each density restricted to the region holding
/// `coverage` of its mass, with object ids "0", "1", ….
pub fn uncertainize(
    pdfs: &[SourcePdf],
    coverage: f64,
    labels: Option<Vec<String>>,
) -> Result<Dataset> {
    let objects = pdfs
        .par_iter()
        .enumerate()
        .map(|(i, pdf)| {
            let region = pdf.mass_region(coverage)?;
            UncertainObject::new(i.to_string(), pdf.restrict(region)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Dataset::new(objects, labels)
}

/// Both derived datasets from one configuration.
pub struct Generated {
    pub pdfs: Vec<SourcePdf>,
    pub perturbed: Vec<Vec<f64>>,
    pub uncertain: Dataset,
}

pub fn generate(
    points: &[Vec<f64>],
    labels: Option<Vec<String>>,
    cfg: &GenConfig,
) -> Result<Generated> {
    let pdfs = assign_pdfs(points, cfg)?;
    let perturbed = perturb(&pdfs, cfg.seed);
    let uncertain = uncertainize(&pdfs, cfg.coverage, labels)?;
    Ok(Generated {
        pdfs,
        perturbed,
        uncertain,
    })
}

/// A random object of one of the parametric families (chosen uniformly),
/// with the mean anywhere in [-10, 10]^m and spreads in [0.05, 3]; some
/// coordinates are degenerate. Used for verification workloads.
pub fn random_object<R: Rng + ?Sized>(
    id: impl Into<String>,
    m: usize,
    rng: &mut R,
) -> Result<UncertainObject> {
    let centre: Vec<f64> = (0..m).map(|_| rng.random_range(-10.0..10.0)).collect();
    let spread: Vec<f64> = (0..m)
        .map(|_| {
            if rng.random::<f64>() < 0.05 {
                0.0
            } else {
                rng.random_range(0.05..3.0)
            }
        })
        .collect();
    let pdf = match rng.random_range(0..4u8) {
        0 => {
            let lo = centre.iter().zip(&spread).map(|(c, s)| c - s).collect();
            let hi = centre.iter().zip(&spread).map(|(c, s)| c + s).collect();
            PdfSpec::uniform(lo, hi)?
        }
        1 => {
            let stddev: Vec<f64> = spread.iter().map(|s| s.max(0.05)).collect();
            let (lo, hi) = centre
                .iter()
                .zip(&spread)
                .zip(&stddev)
                .map(|((c, w), s)| {
                    // off-centre truncation windows exercise the asymmetric case
                    let a = rng.random_range(0.5..3.0) * s;
                    let b = rng.random_range(0.5..3.0) * s;
                    if *w == 0.0 {
                        (*c, *c)
                    } else {
                        (c - a, c + b)
                    }
                })
                .unzip();
            PdfSpec::TruncatedNormal {
                mean: centre,
                stddev,
                region: Region::new(lo, hi)?,
            }
        }
        2 => {
            let rate: Vec<f64> = spread.iter().map(|s| 1.0 / s.max(0.05)).collect();
            let hi = centre
                .iter()
                .zip(&spread)
                .map(|(c, s)| c + s * rng.random_range(0.5..4.0))
                .collect();
            PdfSpec::TruncatedExponential {
                origin: centre.clone(),
                rate,
                region: Region::new(centre, hi)?,
            }
        }
        _ => {
            let count = rng.random_range(1..6usize);
            let points = (0..count)
                .map(|_| {
                    centre
                        .iter()
                        .zip(&spread)
                        .map(|(c, s)| c + s * rng.random_range(-1.0..1.0))
                        .collect()
                })
                .collect();
            let raw: Vec<f64> = (0..count).map(|_| rng.random_range(0.1..1.0)).collect();
            let total: f64 = raw.iter().sum();
            let mut weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
            let rest: f64 = weights[1..].iter().sum();
            weights[0] = 1.0 - rest;
            PdfSpec::empirical(points, weights)?
        }
    };
    UncertainObject::new(id, pdf)
}

/// `n` random objects of dimension `m` with ids "0", "1", ….
pub fn random_dataset(n: usize, m: usize, seed: u64) -> Result<Dataset> {
    let mut rng = derived(seed, 0);
    let objects = (0..n)
        .map(|i| random_object(i.to_string(), m, &mut rng))
        .collect::<Result<Vec<_>>>()?;
    Dataset::new(objects, None)
}

/// Labeled points around `groups` means, group g placing `separation` on
/// every coordinate j with j mod groups = g; normal noise of stddev `spread`.
/// Points cycle through the groups, so group sizes differ by at most one.
pub fn gaussian_groups(
    n: usize,
    m: usize,
    groups: usize,
    separation: f64,
    spread: f64,
    seed: u64,
) -> (Vec<Vec<f64>>, Vec<String>) {
    let mut rng = derived(seed, 1);
    let means: Vec<Vec<f64>> = (0..groups)
        .map(|g| {
            (0..m)
                .map(|j| if j % groups == g { separation } else { 0.0 })
                .collect()
        })
        .collect();
    let mut points = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let g = i % groups;
        points.push(
            means[g]
                .iter()
                .map(|c| {
                    let u: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
                    let v: f64 = rng.random();
                    // Box–Muller
                    c + spread * (-2.0 * u.ln()).sqrt() * (std::f64::consts::TAU * v).cos()
                })
                .collect(),
        );
        labels.push(format!("g{g}"));
    }
    (points, labels)
}
