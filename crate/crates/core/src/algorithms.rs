//! Partitional clustering algorithms over uncertain objects.
//!
//! [`ucpc`] and [`mmvar`] share one relocation local search: objects are
//! visited in dataset order, each is moved to the cluster giving the largest
//! strict decrease of the total objective, and cluster statistics are
//! updated in O(m) per move. [`uk_means`] and [`buk_means`] are Lloyd-style
//! alternations over expected-value centroids.

use crate::error::{Error, Result};
use crate::model::{sq_dist, Dataset, UncertainObject};
use crate::rng::{derive_seed, derived, seeded};
use crate::ucentroid::{ClusterStats, Totals};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Ucpc,
    #[serde(rename = "ukmeans")]
    UkMeans,
    MmVar,
    /// Basic UK-means with sampled expected distances.
    #[serde(rename = "bukm")]
    BasicUkMeans,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Ucpc => "ucpc",
            Algorithm::UkMeans => "ukmeans",
            Algorithm::MmVar => "mmvar",
            Algorithm::BasicUkMeans => "bukm",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ucpc" => Ok(Algorithm::Ucpc),
            "ukmeans" => Ok(Algorithm::UkMeans),
            "mmvar" => Ok(Algorithm::MmVar),
            "bukm" => Ok(Algorithm::BasicUkMeans),
            other => Err(Error::Argument(format!("unknown algorithm {other:?}"))),
        }
    }
}

/// Per-cluster compactness criterion evaluated from cluster statistics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Objective {
    /// J(C) = |C|⁻¹ Σ σ²(o) + J_UK(C).
    Ucpc,
    /// J_UK(C).
    UkMeans,
    /// J_MM(C) = J_UK(C) / |C|.
    MmVar,
}

impl Objective {
    pub fn of_totals(self, t: &Totals) -> f64 {
        match self {
            Objective::Ucpc => t.j_ucpc(),
            Objective::UkMeans => t.j_uk(),
            Objective::MmVar => t.j_mm(),
        }
    }

    pub fn of_stats(self, st: &ClusterStats) -> f64 {
        match self {
            Objective::Ucpc => st.j_ucpc(),
            _ => self.of_totals(&st.totals()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClusterConfig {
    pub k: usize,
    pub seed: u64,
    pub max_sweeps: usize,
    pub restarts: usize,
    pub min_relative_decrease: f64,
    /// Samples per object for basic UK-means.
    pub mc_samples: usize,
}

impl ClusterConfig {
    pub fn new(k: usize) -> Self {
        ClusterConfig {
            k,
            seed: 0,
            max_sweeps: 100,
            restarts: 1,
            min_relative_decrease: 1e-12,
            mc_samples: 10_000,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_max_sweeps(mut self, max_sweeps: usize) -> Self {
        self.max_sweeps = max_sweeps;
        self
    }

    pub fn with_mc_samples(mut self, mc_samples: usize) -> Self {
        self.mc_samples = mc_samples;
        self
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Argument("k must be at least 1".into()));
        }
        if self.k > n {
            return Err(Error::Argument(format!(
                "k = {} exceeds dataset size {n}",
                self.k
            )));
        }
        if self.max_sweeps == 0 || self.restarts == 0 || self.mc_samples == 0 {
            return Err(Error::Argument(
                "max_sweeps, restarts and mc_samples must be positive".into(),
            ));
        }
        if !(self.min_relative_decrease >= 0.0 && self.min_relative_decrease.is_finite()) {
            return Err(Error::Argument(
                "min_relative_decrease must be finite and nonnegative".into(),
            ));
        }
        Ok(())
    }
}

/// A partition of a dataset into `k` non-empty clusters.
#[derive(Clone, Debug, PartialEq)]
pub struct Clustering {
    pub assignment: Vec<usize>,
    pub k: usize,
    pub stats: Vec<ClusterStats>,
    /// Total objective of the algorithm that produced the clustering.
    pub objective: f64,
    pub sweeps_used: usize,
    /// Total objective before the first sweep and after each sweep.
    pub trace: Vec<f64>,
}

impl Clustering {
    /// Builds statistics for a given assignment and scores it with `objective`.
    pub fn from_assignment(
        data: &Dataset,
        k: usize,
        assignment: Vec<usize>,
        objective: Objective,
    ) -> Result<Self> {
        if assignment.len() != data.len() {
            return Err(Error::Argument(format!(
                "assignment has {} entries for {} objects",
                assignment.len(),
                data.len()
            )));
        }
        let stats = build_stats(data, k, &assignment)?;
        let value = stats.iter().map(|s| objective.of_stats(s)).sum();
        Ok(Clustering {
            assignment,
            k,
            stats,
            objective: value,
            sweeps_used: 0,
            trace: vec![value],
        })
    }

    pub fn members(&self, cluster: usize) -> Vec<usize> {
        self.assignment
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == cluster)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.stats.iter().map(ClusterStats::size).collect()
    }

    /// Σ_C objective(C) from statistics rebuilt over the assignment.
    pub fn rescore(&self, data: &Dataset, objective: Objective) -> Result<f64> {
        Ok(build_stats(data, self.k, &self.assignment)?
            .iter()
            .map(|s| objective.of_stats(s))
            .sum())
    }
}

fn build_stats(data: &Dataset, k: usize, assignment: &[usize]) -> Result<Vec<ClusterStats>> {
    let mut stats = vec![ClusterStats::empty(data.dim()); k];
    for (o, &c) in data.objects().iter().zip(assignment) {
        let st = stats.get_mut(c).ok_or_else(|| {
            Error::Argument(format!("cluster index {c} out of range for k = {k}"))
        })?;
        st.add(o.moments())?;
    }
    if stats.iter().any(|s| s.size() == 0) {
        return Err(Error::EmptyCluster);
    }
    Ok(stats)
}

/// Uniformly random assignment, then every empty cluster receives a random
/// object taken from a cluster with more than one member. Statistics are
/// scored with the UCPC objective.
pub fn initial_partition(data: &Dataset, k: usize, seed: u64) -> Result<Clustering> {
    let n = data.len();
    if k == 0 || k > n {
        return Err(Error::Argument(format!(
            "cannot split {n} objects into {k} non-empty clusters"
        )));
    }
    let mut rng = seeded(seed);
    let mut assignment: Vec<usize> = (0..n).map(|_| rng.random_range(0..k)).collect();
    let mut sizes = vec![0usize; k];
    for &c in &assignment {
        sizes[c] += 1;
    }
    for c in 0..k {
        while sizes[c] == 0 {
            let i = rng.random_range(0..n);
            let from = assignment[i];
            if sizes[from] > 1 {
                sizes[from] -= 1;
                sizes[c] += 1;
                assignment[i] = c;
            }
        }
    }
    Clustering::from_assignment(data, k, assignment, Objective::Ucpc)
}

/// Runs `algo` with `cfg`.
pub fn run(algo: Algorithm, data: &Dataset, cfg: &ClusterConfig) -> Result<Clustering> {
    match algo {
        Algorithm::Ucpc => ucpc(data, cfg),
        Algorithm::UkMeans => uk_means(data, cfg),
        Algorithm::MmVar => mmvar(data, cfg),
        Algorithm::BasicUkMeans => buk_means(data, cfg),
    }
}

/// UCPC: relocation local search on Σ_C J(C).
pub fn ucpc(data: &Dataset, cfg: &ClusterConfig) -> Result<Clustering> {
    cfg.validate(data.len())?;
    best_of_restarts(cfg, |seed| {
        let init = initial_partition(data, cfg.k, seed)?;
        relocation_search(data, init, Objective::Ucpc, cfg)
    })
}

/// MMVar: the same relocation search on Σ_C J_MM(C).
pub fn mmvar(data: &Dataset, cfg: &ClusterConfig) -> Result<Clustering> {
    cfg.validate(data.len())?;
    best_of_restarts(cfg, |seed| {
        let init = initial_partition(data, cfg.k, seed)?;
        relocation_search(data, init, Objective::MmVar, cfg)
    })
}

/// Runs one restart per derived seed, possibly in parallel, and keeps the
/// lowest objective (ties go to the lower restart index).
fn best_of_restarts<F>(cfg: &ClusterConfig, run_one: F) -> Result<Clustering>
where
    F: Fn(u64) -> Result<Clustering> + Sync,
{
    let results: Vec<Result<Clustering>> = (0..cfg.restarts as u64)
        .into_par_iter()
        .map(|r| run_one(derive_seed(cfg.seed, r)))
        .collect();
    let mut best: Option<Clustering> = None;
    for r in results {
        let c = r?;
        if best.as_ref().is_none_or(|b| c.objective < b.objective) {
            best = Some(c);
        }
    }
    Ok(best.expect("restarts >= 1"))
}

/// Objective change of moving an object with `moments` out of cluster
/// `from` (current value `j_from`) into `to` (current value `j_to`).
/// Returns the delta and the two new cluster values.
pub fn relocation_delta(
    objective: Objective,
    stats: &[ClusterStats],
    values: &[f64],
    moments: &crate::model::Moments,
    from: usize,
    to: usize,
) -> (f64, f64, f64) {
    let j_from = objective.of_totals(&stats[from].totals_after(moments, -1.0));
    let j_to = objective.of_totals(&stats[to].totals_after(moments, 1.0));
    ((j_from - values[from]) + (j_to - values[to]), j_from, j_to)
}

/// Relocation local search from `init` until a sweep moves nothing or
/// `cfg.max_sweeps` sweeps have run. Moves that would empty a cluster are
/// skipped; a move is taken only if it lowers the total by more than
/// `min_relative_decrease · (1 + |V|)`, V being the total at sweep start.
pub fn relocation_search(
    data: &Dataset,
    init: Clustering,
    objective: Objective,
    cfg: &ClusterConfig,
) -> Result<Clustering> {
    let Clustering {
        mut assignment,
        k,
        mut stats,
        ..
    } = init;
    let objects = data.objects();
    let mut values: Vec<f64> = stats.iter().map(|s| objective.of_stats(s)).collect();
    let mut trace = vec![values.iter().sum::<f64>()];
    let mut sweeps = 0;

    while sweeps < cfg.max_sweeps {
        sweeps += 1;
        let total: f64 = values.iter().sum();
        let threshold = cfg.min_relative_decrease * (1.0 + total.abs());
        let mut moved = 0usize;

        for (i, o) in objects.iter().enumerate() {
            let from = assignment[i];
            if stats[from].size() <= 1 {
                continue;
            }
            let mo = o.moments();
            let j_from = objective.of_totals(&stats[from].totals_after(mo, -1.0));
            let removal = j_from - values[from];
            let mut best: Option<(f64, usize, f64)> = None;
            for to in (0..k).filter(|&c| c != from) {
                let j_to = objective.of_totals(&stats[to].totals_after(mo, 1.0));
                let delta = removal + (j_to - values[to]);
                if best.is_none_or(|(d, _, _)| delta < d) {
                    best = Some((delta, to, j_to));
                }
            }
            if let Some((delta, to, j_to)) = best {
                if delta < -threshold {
                    stats[from].remove(mo)?;
                    stats[to].add(mo)?;
                    values[from] = j_from;
                    values[to] = j_to;
                    assignment[i] = to;
                    moved += 1;
                }
            }
        }

        trace.push(values.iter().sum());
        if moved == 0 {
            break;
        }
    }

    let stats = build_stats(data, k, &assignment)?;
    let value = stats.iter().map(|s| objective.of_stats(s)).sum();
    Ok(Clustering {
        assignment,
        k,
        stats,
        objective: value,
        sweeps_used: sweeps,
        trace,
    })
}

/// UK-means: assign every object to the centroid nearest its expected value
/// (the expected squared distance ED(o, c) differs only by the assignment-invariant
/// σ²(o)), recompute centroids as averaged expected values, repeat until
/// assignments stabilize.
pub fn uk_means(data: &Dataset, cfg: &ClusterConfig) -> Result<Clustering> {
    cfg.validate(data.len())?;
    let points: Vec<&[f64]> = data.objects().iter().map(UncertainObject::mu).collect();
    let spread: Vec<f64> = data
        .objects()
        .iter()
        .map(UncertainObject::total_var)
        .collect();
    best_of_restarts(cfg, |seed| {
        let init = initial_partition(data, cfg.k, seed)?;
        let (assignment, sweeps, trace) = lloyd(
            &points,
            init.assignment,
            cfg,
            |i, c| sq_dist(points[i], c),
            |i, c| spread[i] + sq_dist(points[i], c),
            |assignment| {
                Ok(build_stats(data, cfg.k, assignment)?
                    .iter()
                    .map(|s| Objective::UkMeans.of_stats(s))
                    .sum())
            },
        )?;
        let mut c = Clustering::from_assignment(data, cfg.k, assignment, Objective::UkMeans)?;
        c.sweeps_used = sweeps;
        c.trace = trace;
        Ok(c)
    })
}

/// Basic UK-means: the UK-means loop with every expected distance estimated
/// from `mc_samples` draws per object. Draws are taken once per object and
/// reused across iterations and restarts. Centroids average the per-object
/// sample means; the objective is the sampled Σ ED(o, centroid).
pub fn buk_means(data: &Dataset, cfg: &ClusterConfig) -> Result<Clustering> {
    cfg.validate(data.len())?;
    let m = data.dim();
    let s = cfg.mc_samples;
    let draws: Vec<Vec<f64>> = data
        .objects()
        .par_iter()
        .enumerate()
        .map(|(i, o)| {
            let mut rng = derived(derive_seed(cfg.seed, u64::MAX), i as u64);
            let mut buf = vec![0.0; s * m];
            for chunk in buf.chunks_exact_mut(m) {
                o.sample_into(&mut rng, chunk)?;
            }
            Ok(buf)
        })
        .collect::<Result<_>>()?;
    let means: Vec<Vec<f64>> = draws
        .iter()
        .map(|d| {
            let mut mean = vec![0.0; m];
            for x in d.chunks_exact(m) {
                mean.iter_mut().zip(x).for_each(|(a, b)| *a += b);
            }
            mean.iter_mut().for_each(|v| *v /= s as f64);
            mean
        })
        .collect();
    let points: Vec<&[f64]> = means.iter().map(Vec::as_slice).collect();
    let sampled_ed = |i: usize, c: &[f64]| -> f64 {
        draws[i].chunks_exact(m).map(|x| sq_dist(x, c)).sum::<f64>() / s as f64
    };
    let sampled_total = |assignment: &[usize]| -> Result<f64> {
        let centroids = centroids_of(&points, assignment, cfg.k);
        Ok((0..points.len())
            .map(|i| sampled_ed(i, &centroids[assignment[i]]))
            .sum())
    };

    best_of_restarts(cfg, |seed| {
        let init = initial_partition(data, cfg.k, seed)?;
        let (assignment, sweeps, trace) = lloyd(
            &points,
            init.assignment,
            cfg,
            sampled_ed,
            sampled_ed,
            sampled_total,
        )?;
        let stats = build_stats(data, cfg.k, &assignment)?;
        Ok(Clustering {
            objective: *trace.last().expect("trace is never empty"),
            assignment,
            k: cfg.k,
            stats,
            sweeps_used: sweeps,
            trace,
        })
    })
}

fn centroids_of(points: &[&[f64]], assignment: &[usize], k: usize) -> Vec<Vec<f64>> {
    let m = points.first().map_or(0, |p| p.len());
    let mut sums = vec![vec![0.0; m]; k];
    let mut counts = vec![0usize; k];
    for (p, &c) in points.iter().zip(assignment) {
        counts[c] += 1;
        sums[c].iter_mut().zip(p.iter()).for_each(|(a, b)| *a += b);
    }
    for (s, &n) in sums.iter_mut().zip(&counts) {
        if n > 0 {
            s.iter_mut().for_each(|v| *v /= n as f64);
        }
    }
    sums
}

/// Lloyd alternation shared by the UK-means variants. `assign_cost` ranks
/// centroids for an object; `reseed_cost` picks the object that reseeds an
/// emptied cluster (the one farthest from its own centroid); `score`
/// evaluates a full assignment. Returns the final assignment, the number of
/// sweeps and the objective trace.
fn lloyd<A, R, S>(
    points: &[&[f64]],
    mut assignment: Vec<usize>,
    cfg: &ClusterConfig,
    assign_cost: A,
    reseed_cost: R,
    score: S,
) -> Result<(Vec<usize>, usize, Vec<f64>)>
where
    A: Fn(usize, &[f64]) -> f64,
    R: Fn(usize, &[f64]) -> f64,
    S: Fn(&[usize]) -> Result<f64>,
{
    let k = cfg.k;
    let n = points.len();
    let mut centroids = centroids_of(points, &assignment, k);
    let mut trace = vec![score(&assignment)?];
    let mut sweeps = 0;

    while sweeps < cfg.max_sweeps {
        sweeps += 1;
        let mut next = assignment.clone();
        for i in 0..n {
            let current = assignment[i];
            let mut best = current;
            let mut best_cost = assign_cost(i, &centroids[current]);
            for (c, centroid) in centroids.iter().enumerate() {
                let cost = assign_cost(i, centroid);
                if cost < best_cost {
                    best = c;
                    best_cost = cost;
                }
            }
            next[i] = best;
        }

        let mut sizes = vec![0usize; k];
        for &c in &next {
            sizes[c] += 1;
        }
        for empty in 0..k {
            if sizes[empty] > 0 {
                continue;
            }
            let donor = (0..n)
                .filter(|&i| sizes[next[i]] > 1)
                .max_by(|&a, &b| {
                    reseed_cost(a, &centroids[next[a]])
                        .total_cmp(&reseed_cost(b, &centroids[next[b]]))
                        .then(b.cmp(&a))
                })
                .expect("k <= n leaves a cluster with two members");
            sizes[next[donor]] -= 1;
            sizes[empty] += 1;
            next[donor] = empty;
        }

        let changed = next != assignment;
        assignment = next;
        centroids = centroids_of(points, &assignment, k);
        trace.push(score(&assignment)?);
        if !changed {
            break;
        }
    }
    Ok((assignment, sweeps, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::j_uk;
    use crate::model::PdfSpec;
    use approx::assert_relative_eq;

    fn points_1d(xs: &[f64]) -> Dataset {
        Dataset::from_points(&xs.iter().map(|&x| vec![x]).collect::<Vec<_>>(), None).unwrap()
    }

    fn uniform_pair() -> Dataset {
        Dataset::new(
            vec![
                UncertainObject::new("a", PdfSpec::uniform(vec![0.0], vec![2.0]).unwrap()).unwrap(),
                UncertainObject::new("b", PdfSpec::uniform(vec![1.0], vec![3.0]).unwrap()).unwrap(),
            ],
            None,
        )
        .unwrap()
    }

    #[test]
    fn initial_partition_edge_cases() {
        let d = points_1d(&[0.0, 1.0, 2.0, 3.0, 4.0]);
        let all = initial_partition(&d, 5, 3).unwrap();
        let mut sorted = all.assignment.clone();
        sorted.sort();
        assert_eq!(sorted, vec![0, 1, 2, 3, 4]);
        let one = initial_partition(&d, 1, 3).unwrap();
        assert!(one.assignment.iter().all(|&c| c == 0));
        assert_eq!(
            initial_partition(&d, 3, 9).unwrap(),
            initial_partition(&d, 3, 9).unwrap()
        );
        assert!(initial_partition(&d, 6, 0).is_err());
    }

    #[test]
    fn initial_partition_never_leaves_empty_clusters() {
        let d = points_1d(&(0..12).map(f64::from).collect::<Vec<_>>());
        for seed in 0..200 {
            let c = initial_partition(&d, 7, seed).unwrap();
            assert!(c.sizes().iter().all(|&s| s > 0));
        }
    }

    #[test]
    fn ucpc_single_cluster() {
        let d = uniform_pair();
        let c = ucpc(&d, &ClusterConfig::new(1)).unwrap();
        assert_eq!(c.sweeps_used, 1);
        assert_relative_eq!(c.objective, 1.5, max_relative = 1e-14);
    }

    #[test]
    fn ucpc_recovers_two_far_groups() {
        let xs: Vec<f64> = (0..10)
            .map(|i| -1.0 + 0.2 * i as f64)
            .chain((0..10).map(|i| 99.0 + 0.2 * i as f64))
            .collect();
        let d = points_1d(&xs);
        for seed in 0..20 {
            let c = ucpc(&d, &ClusterConfig::new(2).with_seed(seed)).unwrap();
            let left = c.assignment[0];
            assert!(c.assignment[..10].iter().all(|&a| a == left));
            assert!(c.assignment[10..].iter().all(|&a| a != left));
        }
    }

    #[test]
    fn relocation_never_increases_and_keeps_clusters() {
        let xs: Vec<f64> = (0..40).map(|i| ((i * 37) % 17) as f64 * 0.7).collect();
        let d = points_1d(&xs);
        for seed in 0..10 {
            for algo in [Algorithm::Ucpc, Algorithm::MmVar] {
                let c = run(algo, &d, &ClusterConfig::new(4).with_seed(seed)).unwrap();
                assert!(c.trace.windows(2).all(|w| w[1] <= w[0]));
                assert!(c.sizes().iter().all(|&s| s > 0));
                assert!(c.sweeps_used <= 100);
            }
        }
    }

    #[test]
    fn relocation_delta_matches_recomputation() {
        let d = points_1d(&[0.0, 1.0, 5.0, 6.0, -3.0]);
        let c = initial_partition(&d, 2, 1).unwrap();
        let values: Vec<f64> = c.stats.iter().map(ClusterStats::j_ucpc).collect();
        for i in 0..d.len() {
            let from = c.assignment[i];
            if c.stats[from].size() < 2 {
                continue;
            }
            let to = 1 - from;
            let (delta, _, _) = relocation_delta(
                Objective::Ucpc,
                &c.stats,
                &values,
                d.objects()[i].moments(),
                from,
                to,
            );
            let mut moved = c.assignment.clone();
            moved[i] = to;
            let after = Clustering::from_assignment(&d, 2, moved, Objective::Ucpc).unwrap();
            assert_relative_eq!(c.objective + delta, after.objective, max_relative = 1e-12);
        }
    }

    #[test]
    fn mmvar_objective_values() {
        let d = uniform_pair();
        let c = mmvar(&d, &ClusterConfig::new(1)).unwrap();
        assert_relative_eq!(c.objective, 7.0 / 12.0, max_relative = 1e-14);
        let singles = mmvar(&d, &ClusterConfig::new(2)).unwrap();
        let sum_var: f64 = d.objects().iter().map(UncertainObject::total_var).sum();
        assert_relative_eq!(singles.objective, sum_var, max_relative = 1e-12);
    }

    #[test]
    fn uk_means_on_points_is_kmeans() {
        let d = points_1d(&[0.0, 0.5, 1.0, 10.0, 10.5, 11.0]);
        let c = uk_means(&d, &ClusterConfig::new(2).with_seed(4)).unwrap();
        assert_eq!(c.assignment[0], c.assignment[2]);
        assert_ne!(c.assignment[0], c.assignment[3]);
        assert_relative_eq!(c.objective, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn uk_means_single_cluster() {
        let d = uniform_pair();
        let c = uk_means(&d, &ClusterConfig::new(1)).unwrap();
        let refs: Vec<&UncertainObject> = d.objects().iter().collect();
        assert_relative_eq!(c.objective, j_uk(&refs).unwrap(), max_relative = 1e-14);
    }

    #[test]
    fn basic_uk_means_matches_uk_means_on_points() {
        let xs: Vec<f64> = (0..30).map(|i| ((i * 13) % 23) as f64).collect();
        let d = points_1d(&xs);
        for seed in 0..5 {
            let cfg = ClusterConfig::new(3).with_seed(seed).with_mc_samples(4);
            let a = uk_means(&d, &cfg).unwrap();
            let b = buk_means(&d, &cfg).unwrap();
            assert_eq!(a.assignment, b.assignment);
            assert_relative_eq!(a.objective, b.objective, max_relative = 1e-12);
        }
    }

    #[test]
    fn restarts_are_deterministic() {
        let xs: Vec<f64> = (0..50).map(|i| ((i * 29) % 31) as f64 * 0.3).collect();
        let d = points_1d(&xs);
        let cfg = ClusterConfig::new(5).with_seed(42).with_restarts(8);
        assert_eq!(ucpc(&d, &cfg).unwrap(), ucpc(&d, &cfg).unwrap());
    }

    #[test]
    fn config_validation() {
        let d = points_1d(&[0.0, 1.0]);
        assert!(ucpc(&d, &ClusterConfig::new(3)).is_err());
        assert!(ucpc(&d, &ClusterConfig::new(0)).is_err());
        assert!(ucpc(&d, &ClusterConfig::new(1).with_restarts(0)).is_err());
        assert!("kmeans".parse::<Algorithm>().is_err());
        assert_eq!(
            "bukm".parse::<Algorithm>().unwrap(),
            Algorithm::BasicUkMeans
        );
    }
}
