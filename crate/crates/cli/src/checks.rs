//! Verification checks: closed-form identities on randomized clusters and
//! Monte-Carlo agreement of the closed forms with sampling.

use rand::Rng;
use serde::Serialize;
use std::time::Instant;
use ucpc_core::algorithms::{initial_partition, Clustering, Objective};
use ucpc_core::closedform::{expected_sq_dist_to_point, j_hat, j_mm, j_uk};
use ucpc_core::datagen::{random_dataset, random_object};
use ucpc_core::oracle::{
    mc_estimate, mc_expected_dist, mc_objective, sample_ucentroid_realization, squared_euclidean,
    Target,
};
use ucpc_core::rng::{derive_seed, derived};
use ucpc_core::ucentroid::{ucentroid_moments, ucentroid_variance, ClusterStats};
use ucpc_core::{Dataset, PdfSpec, UncertainObject};

/// Outcome of one check.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: f64,
}

impl Check {
    fn finish(name: &str, start: Instant, passed: bool, detail: String) -> Self {
        Check {
            name: name.into(),
            passed,
            detail,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    }
}

/// Relative error injected into closed-form values, to confirm that the
/// checks can fail. Zero in normal operation.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Fault(pub f64);

impl Fault {
    fn apply(self, x: f64) -> f64 {
        x * (1.0 + self.0)
    }
}

fn random_cluster(seed: u64, i: u64) -> Dataset {
    let mut rng = derived(seed, i);
    let m = rng.random_range(1..=8);
    let n = rng.random_range(1..=64);
    random_dataset(n, m, derive_seed(seed, i)).expect("generator yields valid objects")
}

fn refs(d: &Dataset) -> Vec<&UncertainObject> {
    d.objects().iter().collect()
}

/// J_MM(C) = J_UK(C)/|C| on `clusters` random mixed-family clusters.
pub fn mixture_variance_identity(clusters: usize, seed: u64, fault: Fault) -> Check {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for i in 0..clusters {
        let d = random_cluster(seed, i as u64);
        let c = refs(&d);
        let juk = j_uk(&c).unwrap();
        let dev = (fault.apply(j_mm(&c).unwrap()) - juk / c.len() as f64).abs() / (1.0 + juk.abs());
        worst = worst.max(dev);
    }
    Check::finish(
        "mixture-variance identity",
        start,
        worst <= 1e-9,
        format!("{clusters} clusters, max scaled deviation {worst:.3e} (limit 1e-9)"),
    )
}

/// Ĵ(C) = 2·J_UK(C) on the same cluster population.
pub fn mixture_distance_identity(clusters: usize, seed: u64, fault: Fault) -> Check {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for i in 0..clusters {
        let d = random_cluster(seed, i as u64);
        let c = refs(&d);
        let juk = j_uk(&c).unwrap();
        let dev = (fault.apply(j_hat(&c).unwrap()) - 2.0 * juk).abs() / (1.0 + juk.abs());
        worst = worst.max(dev);
    }
    Check::finish(
        "mixture-distance identity",
        start,
        worst <= 1e-9,
        format!("{clusters} clusters, max scaled deviation {worst:.3e} (limit 1e-9)"),
    )
}

fn two_point(id: &str, a: f64, b: f64) -> UncertainObject {
    UncertainObject::new(
        id,
        PdfSpec::empirical_uniform(vec![vec![a], vec![b]]).unwrap(),
    )
    .unwrap()
}

fn points(xs: &[f64]) -> Vec<UncertainObject> {
    xs.iter()
        .enumerate()
        .map(|(i, &x)| UncertainObject::point(i.to_string(), &[x]).unwrap())
        .collect()
}

fn stats_of(objs: &[UncertainObject]) -> ClusterStats {
    ClusterStats::build(1, objs).unwrap()
}

/// Two clusters with equal UK-means objective but different variance:
/// C = two objects with μ = 1, μ₂ = 2; C′ = point masses at 0 and 2.
pub fn variance_blind_witness(fault: Fault) -> Check {
    let start = Instant::now();
    let c = [two_point("a", 0.0, 2.0), two_point("b", 0.0, 2.0)];
    let c2 = points(&[0.0, 2.0]);
    let (rc, rc2): (Vec<_>, Vec<_>) = (c.iter().collect(), c2.iter().collect());
    let juk = (fault.apply(j_uk(&rc).unwrap()), j_uk(&rc2).unwrap());
    let var: (f64, f64) = (
        c.iter().map(|o| o.total_var()).sum(),
        c2.iter().map(|o| o.total_var()).sum(),
    );
    let j = (stats_of(&c).j_ucpc(), stats_of(&c2).j_ucpc());
    let passed = juk == (2.0, 2.0) && var == (2.0, 0.0) && j == (3.0, 2.0);
    Check::finish(
        "UK-means variance blindness",
        start,
        passed,
        format!("J_UK {juk:?} (want 2, 2); sum var {var:?} (want 2, 0); J {j:?} (want 3, 2)"),
    )
}

/// A = point masses at 0 and 10, B = two objects with μ = 0, σ² = 1:
/// U-centroid variance ranks A first, the UCPC objective ranks B first.
pub fn centroid_variance_discriminator(fault: Fault) -> Check {
    let start = Instant::now();
    let a = points(&[0.0, 10.0]);
    let b = [two_point("p", -1.0, 1.0), two_point("q", -1.0, 1.0)];
    let (ra, rb): (Vec<_>, Vec<_>) = (a.iter().collect(), b.iter().collect());
    let var = (
        ucentroid_variance(&ra).unwrap(),
        fault.apply(ucentroid_variance(&rb).unwrap()),
    );
    let j = (stats_of(&a).j_ucpc(), stats_of(&b).j_ucpc());
    let passed = var == (0.0, 0.5) && j == (50.0, 3.0);
    Check::finish(
        "centroid-variance discriminator",
        start,
        passed,
        format!("centroid variance {var:?} (want 0, 0.5); J {j:?} (want 50, 3)"),
    )
}

/// Incremental statistics against rebuilds after random add/remove sequences.
pub fn incremental_drift(operations: usize, every: usize, seed: u64, fault: Fault) -> Check {
    let start = Instant::now();
    let d = random_dataset(300, 6, seed).unwrap();
    let mut rng = derived(seed, 1);
    let mut inside = vec![false; d.len()];
    let mut stats = ClusterStats::empty(d.dim());
    let mut worst: f64 = 0.0;
    let mut compared = 0;
    for step in 1..=operations {
        let i = rng.random_range(0..d.len());
        if inside[i] {
            stats.remove(d.objects()[i].moments()).unwrap();
        } else {
            stats.add(d.objects()[i].moments()).unwrap();
        }
        inside[i] = !inside[i];
        if step % every == 0 {
            let members = d
                .objects()
                .iter()
                .zip(&inside)
                .filter(|p| *p.1)
                .map(|p| p.0);
            let fresh = ClusterStats::build(d.dim(), members).unwrap();
            let (a, b) = (fault.apply(stats.j_ucpc()), fresh.j_ucpc());
            let dev = if b == 0.0 {
                a.abs()
            } else {
                (a - b).abs() / b.abs()
            };
            worst = worst.max(dev);
            compared += 1;
        }
    }
    Check::finish(
        "incremental statistics drift",
        start,
        worst <= 1e-6,
        format!("{operations} operations, {compared} rebuilds, max relative deviation {worst:.3e} (limit 1e-6)"),
    )
}

/// Below 1000 samples the standard error itself is unreliable, so bands widen.
fn effective_bands(bands: f64, samples: usize) -> f64 {
    bands * (1000.0 / samples as f64).sqrt().clamp(1.0, 3.0)
}

/// Closed-form U-centroid variance against sampled centroid realizations.
pub fn centroid_variance_oracle(clusters: usize, samples: usize, seed: u64, fault: Fault) -> Check {
    let start = Instant::now();
    let bands = effective_bands(4.0, samples);
    let mut worst_rel: f64 = 0.0;
    let mut worst_se: f64 = 0.0;
    let mut failures = 0;
    for i in 0..clusters {
        let d = random_cluster(derive_seed(seed, 2), i as u64);
        let c = refs(&d);
        let truth = fault.apply(ucentroid_variance(&c).unwrap());
        let mean = ucentroid_moments(&c).unwrap().mu;
        // E‖X − μ(C̄)‖² over realizations X equals σ²(C̄)
        let est = mc_estimate(samples, derive_seed(seed, i as u64), |rng| {
            Ok(squared_euclidean(
                &sample_ucentroid_realization(&c, rng)?,
                &mean,
            ))
        })
        .unwrap();
        let rel = if truth == 0.0 {
            est.mean.abs()
        } else {
            (est.mean - truth).abs() / truth
        };
        let in_se = if est.std_error > 0.0 {
            (est.mean - truth).abs() / est.std_error
        } else {
            0.0
        };
        worst_rel = worst_rel.max(rel);
        worst_se = worst_se.max(in_se);
        // at 1e5 realizations the 4-SE band is about 2% for these clusters,
        // so the relative bound is enforced there; fewer samples use the band only
        if !est.agrees_with(truth, bands) || (samples >= 100_000 && rel > 0.02) {
            failures += 1;
        }
    }
    Check::finish(
        "centroid variance vs sampling",
        start,
        failures == 0,
        format!(
            "{clusters} clusters x {samples} realizations, max relative error {worst_rel:.3e}, max |dev|/SE {worst_se:.2} (band {bands:.1} SE; 2% at >= 1e5 samples)"
        ),
    )
}

/// Closed-form UCPC objective against the Monte-Carlo objective.
pub fn objective_oracle(clusterings: usize, samples: usize, seed: u64, fault: Fault) -> Check {
    let start = Instant::now();
    let bands = effective_bands(4.0, samples);
    let mut worst_se: f64 = 0.0;
    let mut failures = 0;
    for i in 0..clusterings {
        let mut rng = derived(seed, 1000 + i as u64);
        let n = rng.random_range(4..=30);
        let m = rng.random_range(1..=4);
        let k = rng.random_range(1..=4usize.min(n));
        let d = random_dataset(n, m, derive_seed(seed, 2000 + i as u64)).unwrap();
        let c: Clustering = initial_partition(&d, k, derive_seed(seed, 3000 + i as u64)).unwrap();
        let truth = fault.apply(c.rescore(&d, Objective::Ucpc).unwrap());
        let est = mc_objective(&c, &d, samples, derive_seed(seed, 4000 + i as u64)).unwrap();
        if est.std_error > 0.0 {
            worst_se = worst_se.max((est.mean - truth).abs() / est.std_error);
        }
        if !est.agrees_with(truth, bands) {
            failures += 1;
        }
    }
    Check::finish(
        "objective vs sampling",
        start,
        failures == 0,
        format!("{clusterings} clusterings x {samples} samples, max |dev|/SE {worst_se:.2} (band {bands:.1} SE)"),
    )
}

/// Closed-form expected squared distance to a point against sampling.
pub fn point_distance_oracle(pairs: usize, samples: usize, seed: u64, fault: Fault) -> Check {
    let start = Instant::now();
    let bands = effective_bands(3.0, samples);
    let mut worst_se: f64 = 0.0;
    let mut failures = 0;
    for i in 0..pairs {
        let mut rng = derived(derive_seed(seed, 5), i as u64);
        let m = rng.random_range(1..=8);
        let o = random_object("o", m, &mut rng).unwrap();
        let y: Vec<f64> = (0..m).map(|_| rng.random_range(-12.0..12.0)).collect();
        let truth = fault.apply(expected_sq_dist_to_point(&o, &y).unwrap());
        let est = mc_expected_dist(
            &o,
            Target::Point(&y),
            squared_euclidean,
            samples,
            derive_seed(seed, 6000 + i as u64),
        )
        .unwrap();
        if est.std_error > 0.0 {
            worst_se = worst_se.max((est.mean - truth).abs() / est.std_error);
        }
        if !est.agrees_with(truth, bands) {
            failures += 1;
        }
    }
    Check::finish(
        "point distance vs sampling",
        start,
        failures == 0,
        format!("{pairs} pairs x {samples} samples, {failures} outside band, max |dev|/SE {worst_se:.2} (band {bands:.1} SE)"),
    )
}

pub fn identities(seed: u64, fault: Fault) -> Vec<Check> {
    vec![
        mixture_variance_identity(200, seed, fault),
        mixture_distance_identity(200, seed, fault),
        variance_blind_witness(fault),
        centroid_variance_discriminator(fault),
        incremental_drift(10_000, 100, seed, fault),
    ]
}

pub fn oracles(samples: usize, seed: u64, fault: Fault) -> Vec<Check> {
    vec![
        centroid_variance_oracle(20, samples, seed, fault),
        objective_oracle(20, samples, seed, fault),
        point_distance_oracle(50, samples, seed, fault),
    ]
}
