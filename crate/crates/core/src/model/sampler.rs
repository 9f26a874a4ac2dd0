use super::normal::{std_cdf, std_quantile};
use super::PdfSpec;
use crate::error::{Error, Result};
use rand::Rng;
use rand_distr::StandardNormal;

const MAX_ATTEMPTS: usize = 64;

/// Windows holding at least this much standard-normal mass are sampled by
/// rejection (at most 1/0.25 = 4 expected tries); thinner ones by inverse CDF.
const REJECTION_MIN_MASS: f64 = 0.25;

/// Precomputed sampling parameters for repeated draws from one pdf.
#[derive(Clone, Debug)]
pub struct Sampler {
    kind: SamplerKind,
}

#[derive(Clone, Debug)]
enum SamplerKind {
    Product(Vec<Coordinate>),
    /// Cumulative weights; the points stay in the pdf.
    Empirical(Vec<f64>),
}

#[derive(Clone, Debug)]
enum Coordinate {
    Point(f64),
    Uniform {
        lo: f64,
        hi: f64,
    },
    /// Truncated normal sampled in standardized space on `[a, b]`, either by
    /// rejection or by inverse CDF; for the latter `reflect` flips the
    /// interval so the CDF is always taken on the lower tail.
    Normal {
        mean: f64,
        stddev: f64,
        a: f64,
        b: f64,
        rejection: bool,
        reflect: bool,
        cdf_lo: f64,
        cdf_hi: f64,
        lo: f64,
        hi: f64,
    },
    /// Truncated exponential on `[lo, lo + len]`; `mass = 1 − exp(−rate·len)`.
    Exponential {
        lo: f64,
        hi: f64,
        rate: f64,
        mass: f64,
    },
}

impl Sampler {
    pub fn new(pdf: &PdfSpec) -> Result<Self> {
        pdf.validate()?;
        let kind = match pdf {
            PdfSpec::Uniform { region } => SamplerKind::Product(
                region
                    .lo
                    .iter()
                    .zip(&region.hi)
                    .map(|(&lo, &hi)| {
                        if lo == hi {
                            Coordinate::Point(lo)
                        } else {
                            Coordinate::Uniform { lo, hi }
                        }
                    })
                    .collect(),
            ),
            PdfSpec::TruncatedNormal {
                mean,
                stddev,
                region,
            } => {
                let mut coords = Vec::with_capacity(region.dim());
                for j in 0..region.dim() {
                    let (lo, hi) = (region.lo[j], region.hi[j]);
                    if lo == hi {
                        coords.push(Coordinate::Point(lo));
                        continue;
                    }
                    let (m, s) = (mean[j], stddev[j]);
                    let (za, zb) = ((lo - m) / s, (hi - m) / s);
                    let reflect = za > 0.0;
                    let (a, b) = if reflect { (-zb, -za) } else { (za, zb) };
                    let (cdf_lo, cdf_hi) = (std_cdf(a), std_cdf(b));
                    if !(cdf_hi > cdf_lo) {
                        return Err(Error::DegenerateSupport(format!(
                            "box [{lo}, {hi}] carries no normal mass in dimension {j}"
                        )));
                    }
                    coords.push(Coordinate::Normal {
                        mean: m,
                        stddev: s,
                        a: za,
                        b: zb,
                        rejection: cdf_hi - cdf_lo >= REJECTION_MIN_MASS,
                        reflect,
                        cdf_lo,
                        cdf_hi,
                        lo,
                        hi,
                    });
                }
                SamplerKind::Product(coords)
            }
            PdfSpec::TruncatedExponential { rate, region, .. } => SamplerKind::Product(
                (0..region.dim())
                    .map(|j| {
                        let (lo, hi) = (region.lo[j], region.hi[j]);
                        if lo == hi {
                            Coordinate::Point(lo)
                        } else {
                            Coordinate::Exponential {
                                lo,
                                hi,
                                rate: rate[j],
                                mass: -(-rate[j] * (hi - lo)).exp_m1(),
                            }
                        }
                    })
                    .collect(),
            ),
            PdfSpec::Empirical { weights, .. } => {
                let mut acc = 0.0;
                SamplerKind::Empirical(
                    weights
                        .iter()
                        .map(|w| {
                            acc += w;
                            acc
                        })
                        .collect(),
                )
            }
        };
        Ok(Sampler { kind })
    }

    /// Writes one draw from `pdf` into `out`. `pdf` must be the density this
    /// sampler was built from.
    pub fn draw_into<R: Rng + ?Sized>(
        &self,
        pdf: &PdfSpec,
        rng: &mut R,
        out: &mut [f64],
    ) -> Result<()> {
        match (&self.kind, pdf) {
            (SamplerKind::Product(coords), _) => {
                for (slot, c) in out.iter_mut().zip(coords) {
                    *slot = c.draw(rng)?;
                }
                Ok(())
            }
            (SamplerKind::Empirical(cumulative), PdfSpec::Empirical { points, .. }) => {
                let total = *cumulative.last().expect("validated non-empty");
                let u = rng.random::<f64>() * total;
                let idx = cumulative
                    .partition_point(|&c| c <= u)
                    .min(points.len() - 1);
                out.copy_from_slice(&points[idx]);
                Ok(())
            }
            _ => Err(Error::Sampling("sampler does not match pdf".into())),
        }
    }
}

impl Coordinate {
    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<f64> {
        match *self {
            Coordinate::Point(v) => Ok(v),
            Coordinate::Uniform { lo, hi } => {
                Ok((lo + rng.random::<f64>() * (hi - lo)).clamp(lo, hi))
            }
            Coordinate::Normal {
                mean,
                stddev,
                a,
                b,
                rejection,
                reflect,
                cdf_lo,
                cdf_hi,
                lo,
                hi,
            } => {
                if rejection {
                    loop {
                        let z: f64 = rng.sample(StandardNormal);
                        if (a..=b).contains(&z) {
                            return Ok((mean + stddev * z).clamp(lo, hi));
                        }
                    }
                }
                for _ in 0..MAX_ATTEMPTS {
                    let u: f64 = rng.random();
                    let z = std_quantile(cdf_lo + u * (cdf_hi - cdf_lo));
                    if !z.is_finite() {
                        continue;
                    }
                    let z = if reflect { -z } else { z };
                    return Ok((mean + stddev * z).clamp(lo, hi));
                }
                Err(Error::Sampling(format!(
                    "no finite truncated-normal draw on [{lo}, {hi}] after {MAX_ATTEMPTS} attempts"
                )))
            }
            Coordinate::Exponential { lo, hi, rate, mass } => {
                let u: f64 = rng.random();
                let t = -(-u * mass).ln_1p() / rate;
                Ok((lo + t).clamp(lo, hi))
            }
        }
    }
}
