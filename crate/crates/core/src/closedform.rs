//! Closed-form expected squared distances and the UK-means and MMVar
//! objectives.
//!
//! Everything here reads cached moments only; no density is integrated.

use crate::error::{Error, Result};
use crate::model::{sq_dist, UncertainObject};

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::dims(expected, found));
    }
    Ok(())
}

fn non_empty(cluster: &[&UncertainObject]) -> Result<usize> {
    let first = cluster.first().ok_or(Error::EmptyCluster)?;
    let m = first.dim();
    for o in cluster {
        check_dim(m, o.dim())?;
    }
    Ok(m)
}

/// ED(o, y) = σ²(o) + ‖y − μ(o)‖².
pub fn expected_sq_dist_to_point(o: &UncertainObject, y: &[f64]) -> Result<f64> {
    check_dim(o.dim(), y.len())?;
    Ok(o.total_var() + sq_dist(y, o.mu()))
}

/// ÊD(a, b) = Σ_j ((μ₂)_j(a) − 2 μ_j(a) μ_j(b) + (μ₂)_j(b)), the expected
/// squared distance between independent draws of `a` and `b`.
///
/// Note that ÊD(o, o) = 2σ²(o), not 0: the two draws are independent.
pub fn expected_sq_dist_between(a: &UncertainObject, b: &UncertainObject) -> Result<f64> {
    check_dim(a.dim(), b.dim())?;
    Ok(ed_between_unchecked(a, b))
}

pub(crate) fn ed_between_unchecked(a: &UncertainObject, b: &UncertainObject) -> f64 {
    let (am, am2, bm, bm2) = (a.mu(), a.mu2(), b.mu(), b.mu2());
    (0..am.len())
        .map(|j| am2[j] - 2.0 * am[j] * bm[j] + bm2[j])
        .sum()
}

/// UK-means centroid: the average of member expected values.
pub fn uk_centroid(cluster: &[&UncertainObject]) -> Result<Vec<f64>> {
    let m = non_empty(cluster)?;
    let mut c = vec![0.0; m];
    for o in cluster {
        for (cj, mj) in c.iter_mut().zip(o.mu()) {
            *cj += mj;
        }
    }
    let n = cluster.len() as f64;
    c.iter_mut().for_each(|v| *v /= n);
    Ok(c)
}

/// J_UK(C) = Σ_j (Σ_o (μ₂)_j(o) − |C|⁻¹ (Σ_o μ_j(o))²).
pub fn j_uk(cluster: &[&UncertainObject]) -> Result<f64> {
    let m = non_empty(cluster)?;
    let n = cluster.len() as f64;
    let mut total = 0.0;
    for j in 0..m {
        let (mut phi, mut s) = (0.0, 0.0);
        for o in cluster {
            phi += o.mu2()[j];
            s += o.mu()[j];
        }
        total += phi - s * s / n;
    }
    Ok(total)
}

/// Moments of the MMVar mixture centroid; its density is never built.
#[derive(Clone, Debug, PartialEq)]
pub struct MixtureCentroid {
    pub mu: Vec<f64>,
    pub mu2: Vec<f64>,
    pub size: usize,
}

impl MixtureCentroid {
    /// σ² of the mixture, Σ_j (mu2_j − mu_j²).
    pub fn variance(&self) -> f64 {
        self.mu
            .iter()
            .zip(&self.mu2)
            .map(|(m, m2)| m2 - m * m)
            .sum()
    }
}

pub fn mixture_moments(cluster: &[&UncertainObject]) -> Result<MixtureCentroid> {
    let m = non_empty(cluster)?;
    let mut mu = vec![0.0; m];
    let mut mu2 = vec![0.0; m];
    for o in cluster {
        for j in 0..m {
            mu[j] += o.mu()[j];
            mu2[j] += o.mu2()[j];
        }
    }
    let n = cluster.len() as f64;
    mu.iter_mut().chain(mu2.iter_mut()).for_each(|v| *v /= n);
    Ok(MixtureCentroid {
        mu,
        mu2,
        size: cluster.len(),
    })
}

/// J_MM(C): variance of the mixture centroid.
pub fn j_mm(cluster: &[&UncertainObject]) -> Result<f64> {
    Ok(mixture_moments(cluster)?.variance())
}

/// Ĵ(C) = Σ_o ÊD(o, C̄_MM), with ÊD taken against the mixture moments.
pub fn j_hat(cluster: &[&UncertainObject]) -> Result<f64> {
    let centroid = mixture_moments(cluster)?;
    Ok(cluster
        .iter()
        .map(|o| {
            (0..centroid.mu.len())
                .map(|j| o.mu2()[j] - 2.0 * o.mu()[j] * centroid.mu[j] + centroid.mu2[j])
                .sum::<f64>()
        })
        .sum())
}
