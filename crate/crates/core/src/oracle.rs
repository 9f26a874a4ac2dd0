//! Independent verifiers: Monte-Carlo estimates of expected distances and of
//! the UCPC objective, a U-centroid realization sampler, and exhaustive
//! search over all partitions of small datasets.
//!
//! Monte-Carlo work is split into fixed blocks whose streams are derived
//! from `(seed, block index)`, so results do not depend on thread count.

use crate::algorithms::{Clustering, Objective};
use crate::error::{Error, Result};
use crate::model::{sq_dist, Dataset, UncertainObject};
use crate::rng::derived;
use crate::ucentroid::ClusterStats;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

const BLOCK: usize = 4096;

/// Largest dataset [`exhaustive_best_clustering`] accepts.
pub const MAX_EXHAUSTIVE: usize = 12;

/// Streaming mean and variance (Welford), mergeable across blocks.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RunningStats {
    n: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&mut self, other: &RunningStats) {
        if other.n == 0 {
            return;
        }
        if self.n == 0 {
            *self = *other;
            return;
        }
        let n = self.n + other.n;
        let delta = other.mean - self.mean;
        self.mean += delta * other.n as f64 / n as f64;
        self.m2 += other.m2 + delta * delta * (self.n as f64 * other.n as f64) / n as f64;
        self.n = n;
    }

    pub fn count(&self) -> u64 {
        self.n
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            (self.m2 / (self.n - 1) as f64).max(0.0)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: usize,
}

impl MCEstimate {
    fn from_stats(s: &RunningStats) -> Self {
        MCEstimate {
            mean: s.mean(),
            std_error: (s.variance() / s.count() as f64).sqrt(),
            n_samples: s.count() as usize,
        }
    }

    /// Whether `reference` lies within `bands` standard errors of the mean.
    /// A zero standard error demands agreement to 1e-12 relative.
    pub fn agrees_with(&self, reference: f64, bands: f64) -> bool {
        let tol = (bands * self.std_error).max(1e-12 * (1.0 + reference.abs()));
        (self.mean - reference).abs() <= tol
    }
}

/// Mean and standard error of `n_samples` draws of `draw`, computed in
/// parallel blocks.
pub fn mc_estimate<F>(n_samples: usize, seed: u64, draw: F) -> Result<MCEstimate>
where
    F: Fn(&mut crate::rng::Rng) -> Result<f64> + Sync,
{
    if n_samples < 2 {
        return Err(Error::Argument(
            "Monte-Carlo estimates need at least 2 samples".into(),
        ));
    }
    let blocks = n_samples.div_ceil(BLOCK);
    let partials: Vec<RunningStats> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = derived(seed, b as u64);
            let len = BLOCK.min(n_samples - b * BLOCK);
            let mut acc = RunningStats::default();
            for _ in 0..len {
                acc.push(draw(&mut rng)?);
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let mut total = RunningStats::default();
    for p in &partials {
        total.merge(p);
    }
    Ok(MCEstimate::from_stats(&total))
}

/// What an object's distance is measured to.
#[derive(Clone, Copy, Debug)]
pub enum Target<'a> {
    Point(&'a [f64]),
    /// Another uncertain object, drawn independently.
    Object(&'a UncertainObject),
}

pub fn squared_euclidean(a: &[f64], b: &[f64]) -> f64 {
    sq_dist(a, b)
}

pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    sq_dist(a, b).sqrt()
}

/// Monte-Carlo estimate of ED_d(o, target) = E[d(x, y)], x ~ o.
pub fn mc_expected_dist<D>(
    o: &UncertainObject,
    target: Target<'_>,
    metric: D,
    n_samples: usize,
    seed: u64,
) -> Result<MCEstimate>
where
    D: Fn(&[f64], &[f64]) -> f64 + Sync,
{
    let m = o.dim();
    let other = match target {
        Target::Point(y) => y.len(),
        Target::Object(b) => b.dim(),
    };
    if other != m {
        return Err(Error::dims(m, other));
    }
    mc_estimate(n_samples, seed, |rng| {
        let x = o.sample(rng)?;
        Ok(match target {
            Target::Point(y) => metric(&x, y),
            Target::Object(b) => metric(&x, &b.sample(rng)?),
        })
    })
}

/// One realization of the U-centroid: the coordinate-wise average of one
/// draw per member.
pub fn sample_ucentroid_realization<R: Rng + ?Sized>(
    cluster: &[&UncertainObject],
    rng: &mut R,
) -> Result<Vec<f64>> {
    let first = cluster.first().ok_or(Error::EmptyCluster)?;
    let m = first.dim();
    let mut sum = vec![0.0; m];
    let mut x = vec![0.0; m];
    for o in cluster {
        if o.dim() != m {
            return Err(Error::dims(m, o.dim()));
        }
        o.sample_into(rng, &mut x)?;
        sum.iter_mut().zip(&x).for_each(|(s, v)| *s += v);
    }
    let n = cluster.len() as f64;
    sum.iter_mut().for_each(|v| *v /= n);
    Ok(sum)
}

/// Monte-Carlo estimate of Σ_C Σ_{o∈C} ÊD(o, C̄).
///
/// Each sample draws every object once and, independently, one U-centroid
/// realization per cluster, so every term pairs an object draw with an
/// independent centroid draw.
pub fn mc_objective(
    clustering: &Clustering,
    data: &Dataset,
    n_samples: usize,
    seed: u64,
) -> Result<MCEstimate> {
    if clustering.assignment.len() != data.len() {
        return Err(Error::Argument("clustering does not match dataset".into()));
    }
    let clusters: Vec<Vec<&UncertainObject>> = (0..clustering.k)
        .map(|c| {
            clustering
                .members(c)
                .into_iter()
                .map(|i| &data.objects()[i])
                .collect()
        })
        .collect();
    let m = data.dim();
    mc_estimate(n_samples, seed, |rng| {
        let mut x = vec![0.0; m];
        let mut total = 0.0;
        for members in clusters.iter().filter(|c| !c.is_empty()) {
            let centroid = sample_ucentroid_realization(members, rng)?;
            for o in members {
                o.sample_into(rng, &mut x)?;
                total += sq_dist(&x, &centroid);
            }
        }
        Ok(total)
    })
}

/// Calls `visit` with every restricted growth string of length `n` using
/// exactly `k` block labels, i.e. every partition of `n` items into `k`
/// non-empty unlabeled blocks, once each.
pub fn for_each_partition<F: FnMut(&[usize])>(n: usize, k: usize, mut visit: F) {
    if k == 0 || k > n {
        return;
    }
    let mut labels = vec![0usize; n];
    fn recurse<F: FnMut(&[usize])>(
        labels: &mut [usize],
        i: usize,
        used: usize,
        k: usize,
        visit: &mut F,
    ) {
        let n = labels.len();
        if i == n {
            if used == k {
                visit(labels);
            }
            return;
        }
        // Remaining positions must be able to open the missing blocks.
        if n - i < k - used {
            return;
        }
        for c in 0..used.min(k) {
            labels[i] = c;
            recurse(labels, i + 1, used, k, visit);
        }
        if used < k {
            labels[i] = used;
            recurse(labels, i + 1, used + 1, k, visit);
        }
    }
    // The first item always opens block 0.
    recurse(&mut labels, 1, 1, k, &mut visit);
}

/// Global minimum of Σ_C objective(C) over all partitions into `k`
/// non-empty clusters. Ties keep the first partition in enumeration order.
pub fn exhaustive_best_clustering(
    data: &Dataset,
    k: usize,
    objective: Objective,
) -> Result<(Clustering, f64)> {
    let n = data.len();
    if n > MAX_EXHAUSTIVE {
        return Err(Error::EnumerationGuard {
            n,
            max: MAX_EXHAUSTIVE,
        });
    }
    if k == 0 || k > n {
        return Err(Error::Argument(format!(
            "cannot split {n} objects into {k} non-empty clusters"
        )));
    }
    let m = data.dim();
    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut failure = None;
    for_each_partition(n, k, |labels| {
        let mut stats = vec![ClusterStats::empty(m); k];
        for (o, &c) in data.objects().iter().zip(labels) {
            if let Err(e) = stats[c].add(o.moments()) {
                failure.get_or_insert(e);
                return;
            }
        }
        let value: f64 = stats.iter().map(|s| objective.of_stats(s)).sum();
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, labels.to_vec()));
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let (value, labels) = best.expect("k <= n yields at least one partition");
    let clustering = Clustering::from_assignment(data, k, labels, objective)?;
    Ok((clustering, value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::PdfSpec;
    use crate::rng::seeded;
    use crate::ucentroid::ucentroid_region;

    fn uni(lo: f64, hi: f64) -> UncertainObject {
        UncertainObject::new("u", PdfSpec::uniform(vec![lo], vec![hi]).unwrap()).unwrap()
    }

    fn stirling2(n: usize, k: usize) -> usize {
        if n == 0 && k == 0 {
            return 1;
        }
        if n == 0 || k == 0 {
            return 0;
        }
        k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)
    }

    #[test]
    fn running_stats_merge_matches_sequential() {
        let xs: Vec<f64> = (0..1000)
            .map(|i| ((i * 7919) % 1013) as f64 / 10.0)
            .collect();
        let mut whole = RunningStats::default();
        xs.iter().for_each(|&x| whole.push(x));
        let mut a = RunningStats::default();
        let mut b = RunningStats::default();
        xs[..313].iter().for_each(|&x| a.push(x));
        xs[313..].iter().for_each(|&x| b.push(x));
        a.merge(&b);
        assert_eq!(a.count(), whole.count());
        assert!((a.mean() - whole.mean()).abs() < 1e-12);
        assert!((a.variance() - whole.variance()).abs() < 1e-9);
    }

    #[test]
    fn point_masses_are_exact() {
        let p = UncertainObject::point("p", &[5.0]).unwrap();
        let est = mc_expected_dist(&p, Target::Point(&[7.0]), squared_euclidean, 100, 1).unwrap();
        assert_eq!((est.mean, est.std_error), (4.0, 0.0));
    }

    #[test]
    fn too_few_samples_rejected() {
        let p = UncertainObject::point("p", &[5.0]).unwrap();
        assert!(mc_expected_dist(&p, Target::Point(&[7.0]), squared_euclidean, 1, 1).is_err());
        assert!(
            mc_expected_dist(&p, Target::Point(&[7.0, 1.0]), squared_euclidean, 10, 1).is_err()
        );
    }

    #[test]
    fn estimates_are_seed_deterministic() {
        let (a, b) = (uni(0.0, 2.0), uni(1.0, 3.0));
        let e1 = mc_expected_dist(&a, Target::Object(&b), squared_euclidean, 10_000, 9).unwrap();
        let e2 = mc_expected_dist(&a, Target::Object(&b), squared_euclidean, 10_000, 9).unwrap();
        assert_eq!(e1, e2);
    }

    #[test]
    fn uniform_pair_expected_distance() {
        let (a, b) = (uni(0.0, 2.0), uni(1.0, 3.0));
        let est =
            mc_expected_dist(&a, Target::Object(&b), squared_euclidean, 1_000_000, 3).unwrap();
        assert!(est.agrees_with(5.0 / 3.0, 3.0), "{est:?}");
        let est =
            mc_expected_dist(&a, Target::Point(&[2.0]), squared_euclidean, 1_000_000, 4).unwrap();
        assert!(est.agrees_with(4.0 / 3.0, 3.0), "{est:?}");
    }

    #[test]
    fn realizations_inside_region_and_centred() {
        let (a, b) = (uni(0.0, 2.0), uni(1.0, 3.0));
        let c = [&a, &b];
        let region = ucentroid_region(&c).unwrap();
        let mut rng = seeded(5);
        let mut acc = RunningStats::default();
        for _ in 0..100_000 {
            let x = sample_ucentroid_realization(&c, &mut rng).unwrap();
            assert!(region.contains(&x));
            acc.push(x[0]);
        }
        let se = (acc.variance() / acc.count() as f64).sqrt();
        assert!((acc.mean() - 1.5).abs() <= 4.0 * se);

        let (p, q) = (
            UncertainObject::point("p", &[1.0]).unwrap(),
            UncertainObject::point("q", &[4.0]).unwrap(),
        );
        assert_eq!(
            sample_ucentroid_realization(&[&p, &q], &mut rng).unwrap(),
            vec![2.5]
        );
    }

    #[test]
    fn mc_objective_on_uniform_pair() {
        let d = Dataset::new(vec![uni(0.0, 2.0), uni(1.0, 3.0)], None).unwrap();
        let one = Clustering::from_assignment(&d, 1, vec![0, 0], Objective::Ucpc).unwrap();
        let est = mc_objective(&one, &d, 100_000, 8).unwrap();
        assert!(est.agrees_with(1.5, 4.0), "{est:?}");
        let two = Clustering::from_assignment(&d, 2, vec![0, 1], Objective::Ucpc).unwrap();
        let est = mc_objective(&two, &d, 100_000, 8).unwrap();
        assert!(est.agrees_with(4.0 / 3.0, 4.0), "{est:?}");
    }

    #[test]
    fn mc_objective_exact_on_points() {
        let d = Dataset::from_points(&[vec![0.0], vec![2.0], vec![7.0]], None).unwrap();
        let c = Clustering::from_assignment(&d, 2, vec![0, 0, 1], Objective::Ucpc).unwrap();
        let est = mc_objective(&c, &d, 50, 1).unwrap();
        assert_eq!(est.std_error, 0.0);
        assert_eq!(est.mean, c.objective);
    }

    #[test]
    fn partition_counts_are_stirling_numbers() {
        let mut count = 0;
        for_each_partition(3, 2, |_| count += 1);
        assert_eq!(count, 3);
        for n in 1..=8 {
            for k in 1..=n {
                let mut count = 0;
                let mut seen = std::collections::HashSet::new();
                for_each_partition(n, k, |l| {
                    count += 1;
                    assert!(seen.insert(l.to_vec()));
                    assert_eq!(l.iter().max().copied(), Some(k - 1));
                });
                assert_eq!(count, stirling2(n, k), "S({n},{k})");
            }
        }
    }

    #[test]
    fn exhaustive_guard_and_singletons() {
        let pts: Vec<Vec<f64>> = (0..13).map(|i| vec![i as f64]).collect();
        let d = Dataset::from_points(&pts, None).unwrap();
        assert!(matches!(
            exhaustive_best_clustering(&d, 2, Objective::Ucpc),
            Err(Error::EnumerationGuard { .. })
        ));
        let small = d.truncated(4);
        let (c, v) = exhaustive_best_clustering(&small, 4, Objective::Ucpc).unwrap();
        assert_eq!(c.assignment, vec![0, 1, 2, 3]);
        assert_eq!(v, 0.0);
    }

    #[test]
    fn exhaustive_bounds_heuristics() {
        let pts: Vec<Vec<f64>> = [0.0, 0.3, 4.0, 4.1, 9.0, 9.5, 9.7]
            .iter()
            .map(|&x| vec![x])
            .collect();
        let d = Dataset::from_points(&pts, None).unwrap();
        let (_, best) = exhaustive_best_clustering(&d, 3, Objective::Ucpc).unwrap();
        for seed in 0..10 {
            let c = crate::algorithms::ucpc(
                &d,
                &crate::algorithms::ClusterConfig::new(3).with_seed(seed),
            )
            .unwrap();
            assert!(c.objective >= best - 1e-12);
        }
    }
}
