//! U-centroid of a cluster and the UCPC objective.
//!
//! A realization of the U-centroid is the coordinate-wise average of one
//! independent draw per member. Its density has no closed form and is never
//! built; its moments, its variance and the objective
//!
//! ```text
//! J(C) = Σ_j ( Ψ_j/|C| + Φ_j − S_j²/|C| ) = |C|⁻¹ Σ σ²(o) + J_UK(C)
//! ```
//!
//! are all available from per-dimension sums over the members.

use crate::error::{Error, Result};
use crate::model::{Moments, Region, UncertainObject};

/// Per-dimension sufficient statistics of a cluster.
///
/// `psi[j] = Σ (σ²)_j`, `phi[j] = Σ (μ₂)_j`, `s[j] = Σ μ_j`. The squared
/// linear sum Υ_j = s[j]² is derived on demand; keeping `s` signed makes the
/// add/remove updates valid for negative coordinates too.
#[derive(Clone, Debug, PartialEq)]
pub struct ClusterStats {
    size: usize,
    psi: Vec<f64>,
    phi: Vec<f64>,
    s: Vec<f64>,
}

impl ClusterStats {
    pub fn empty(m: usize) -> Self {
        ClusterStats {
            size: 0,
            psi: vec![0.0; m],
            phi: vec![0.0; m],
            s: vec![0.0; m],
        }
    }

    /// Statistics of `members` from scratch. `m` fixes the dimensionality
    /// when `members` is empty.
    pub fn build<'a, I>(m: usize, members: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a UncertainObject>,
    {
        let mut st = ClusterStats::empty(m);
        for o in members {
            st.add(o.moments())?;
        }
        Ok(st)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dim(&self) -> usize {
        self.s.len()
    }

    pub fn psi(&self) -> &[f64] {
        &self.psi
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    pub fn linear_sum(&self) -> &[f64] {
        &self.s
    }

    /// Υ_j = (Σ μ_j)².
    pub fn upsilon(&self) -> Vec<f64> {
        self.s.iter().map(|v| v * v).collect()
    }

    pub fn add(&mut self, o: &Moments) -> Result<()> {
        self.check(o)?;
        self.size += 1;
        for j in 0..self.s.len() {
            self.psi[j] += o.var[j];
            self.phi[j] += o.mu2[j];
            self.s[j] += o.mu[j];
        }
        Ok(())
    }

    /// Removes an object whose contribution the caller knows to be present.
    pub fn remove(&mut self, o: &Moments) -> Result<()> {
        self.check(o)?;
        if self.size == 0 {
            return Err(Error::Underflow);
        }
        self.size -= 1;
        if self.size == 0 {
            self.psi
                .iter_mut()
                .chain(&mut self.phi)
                .chain(&mut self.s)
                .for_each(|v| *v = 0.0);
            return Ok(());
        }
        for j in 0..self.s.len() {
            self.psi[j] -= o.var[j];
            self.phi[j] -= o.mu2[j];
            self.s[j] -= o.mu[j];
        }
        Ok(())
    }

    fn check(&self, o: &Moments) -> Result<()> {
        if o.dim() != self.dim() {
            return Err(Error::dims(self.dim(), o.dim()));
        }
        Ok(())
    }

    /// UCPC objective J(C) per dimension; 0 for an empty cluster.
    pub fn j_ucpc(&self) -> f64 {
        if self.size == 0 {
            return 0.0;
        }
        let n = self.size as f64;
        (0..self.s.len())
            .map(|j| self.psi[j] / n + self.phi[j] - self.s[j] * self.s[j] / n)
            .sum()
    }

    /// Dimension-summed Ψ, Φ and Υ, the inputs of every relocation objective.
    pub fn totals(&self) -> Totals {
        Totals {
            size: self.size,
            psi: self.psi.iter().sum(),
            phi: self.phi.iter().sum(),
            upsilon: self.s.iter().map(|v| v * v).sum(),
        }
    }

    /// Totals after adding (`sign = 1.0`) or removing (`sign = -1.0`) `o`,
    /// computed in O(m) without mutating the statistics.
    pub fn totals_after(&self, o: &Moments, sign: f64) -> Totals {
        let size = if sign > 0.0 {
            self.size + 1
        } else {
            self.size.saturating_sub(1)
        };
        if size == 0 {
            return Totals::default();
        }
        let (mut psi, mut phi, mut upsilon) = (0.0, 0.0, 0.0);
        for j in 0..self.s.len() {
            psi += self.psi[j] + sign * o.var[j];
            phi += self.phi[j] + sign * o.mu2[j];
            let s = self.s[j] + sign * o.mu[j];
            upsilon += s * s;
        }
        Totals {
            size,
            psi,
            phi,
            upsilon,
        }
    }
}

/// Σ_j Ψ_j, Σ_j Φ_j and Σ_j Υ_j of a cluster.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Totals {
    pub size: usize,
    pub psi: f64,
    pub phi: f64,
    pub upsilon: f64,
}

impl Totals {
    /// J_UK = Φ − Υ/|C|.
    pub fn j_uk(&self) -> f64 {
        if self.size == 0 {
            return 0.0;
        }
        self.phi - self.upsilon / self.size as f64
    }

    /// J_MM = J_UK / |C|.
    pub fn j_mm(&self) -> f64 {
        if self.size == 0 {
            return 0.0;
        }
        self.j_uk() / self.size as f64
    }

    /// J = Ψ/|C| + J_UK.
    pub fn j_ucpc(&self) -> f64 {
        if self.size == 0 {
            return 0.0;
        }
        self.psi / self.size as f64 + self.j_uk()
    }
}

/// The U-centroid: region, moments and variance. The density itself is
/// only reachable through [`crate::oracle::sample_ucentroid_realization`].
#[derive(Clone, Debug, PartialEq)]
pub struct UCentroid {
    pub region: Region,
    pub moments: Moments,
    pub variance: f64,
}

impl UCentroid {
    pub fn of(cluster: &[&UncertainObject]) -> Result<Self> {
        Ok(UCentroid {
            region: ucentroid_region(cluster)?,
            moments: ucentroid_moments(cluster)?,
            variance: ucentroid_variance(cluster)?,
        })
    }
}

fn cluster_dim(cluster: &[&UncertainObject]) -> Result<usize> {
    let m = cluster.first().ok_or(Error::EmptyCluster)?.dim();
    for o in cluster {
        if o.dim() != m {
            return Err(Error::dims(m, o.dim()));
        }
    }
    Ok(m)
}

/// Member-wise averaged box: `[avg lo_j, avg hi_j]` per dimension.
pub fn ucentroid_region(cluster: &[&UncertainObject]) -> Result<Region> {
    let m = cluster_dim(cluster)?;
    let n = cluster.len() as f64;
    let mut lo = vec![0.0; m];
    let mut hi = vec![0.0; m];
    for o in cluster {
        for j in 0..m {
            lo[j] += o.region().lo[j];
            hi[j] += o.region().hi[j];
        }
    }
    lo.iter_mut().chain(hi.iter_mut()).for_each(|v| *v /= n);
    // Rounding in the averages can put lo a hair above hi on degenerate boxes.
    for j in 0..m {
        if lo[j] > hi[j] {
            hi[j] = lo[j];
        }
    }
    Region::new(lo, hi)
}

/// Moments of the U-centroid: μ = average member μ, and
/// μ₂ = |C|⁻² (Σ μ₂(o_i) + 2 Σ_{i<i'} μ(o_i) μ(o_i')).
pub fn ucentroid_moments(cluster: &[&UncertainObject]) -> Result<Moments> {
    let m = cluster_dim(cluster)?;
    let n = cluster.len() as f64;
    let mut mu = vec![0.0; m];
    let mut mu2 = vec![0.0; m];
    for j in 0..m {
        let mut sum_mu2 = 0.0;
        let mut cross = 0.0;
        let mut prefix = 0.0;
        for o in cluster {
            let v = o.mu()[j];
            sum_mu2 += o.mu2()[j];
            cross += v * prefix;
            prefix += v;
        }
        mu[j] = prefix / n;
        mu2[j] = (sum_mu2 + 2.0 * cross) / (n * n);
    }
    Ok(Moments::from_raw(mu, mu2))
}

/// σ²(C̄) = |C|⁻² Σ σ²(o_i).
pub fn ucentroid_variance(cluster: &[&UncertainObject]) -> Result<f64> {
    cluster_dim(cluster)?;
    let n = cluster.len() as f64;
    Ok(cluster.iter().map(|o| o.total_var()).sum::<f64>() / (n * n))
}
