//! Cluster-validity criteria: F-measure against a reference
//! classification, normalized intra/inter-cluster expected distances, their
//! difference Q, and the F-measure gain Θ.

use crate::closedform::ed_between_unchecked;
use crate::error::{Error, Result};
use crate::model::Dataset;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::hash::Hash;

/// F(C, C̃) = |D|⁻¹ Σ_u |C̃_u| max_v F_uv.
pub fn f_measure<L: Eq + Hash>(assignment: &[usize], reference: &[L]) -> Result<f64> {
    if assignment.len() != reference.len() {
        return Err(Error::Argument(format!(
            "{} assignments but {} reference labels",
            assignment.len(),
            reference.len()
        )));
    }
    let n = assignment.len();
    if n == 0 {
        return Err(Error::Argument("F-measure of an empty dataset".into()));
    }
    let mut class_index: HashMap<&L, usize> = HashMap::new();
    for l in reference {
        let next = class_index.len();
        class_index.entry(l).or_insert(next);
    }
    let n_classes = class_index.len();
    let n_clusters = assignment.iter().max().map_or(0, |&c| c + 1);

    let mut overlap = vec![vec![0usize; n_clusters]; n_classes];
    let mut class_size = vec![0usize; n_classes];
    let mut cluster_size = vec![0usize; n_clusters];
    for (&c, l) in assignment.iter().zip(reference) {
        let u = class_index[l];
        overlap[u][c] += 1;
        class_size[u] += 1;
        cluster_size[c] += 1;
    }

    let mut total = 0.0;
    for u in 0..n_classes {
        let best = (0..n_clusters)
            .filter(|&v| cluster_size[v] > 0)
            .map(|v| {
                let common = overlap[u][v] as f64;
                let p = common / cluster_size[v] as f64;
                let r = common / class_size[u] as f64;
                if p + r == 0.0 {
                    0.0
                } else {
                    2.0 * p * r / (p + r)
                }
            })
            .fold(0.0, f64::max);
        total += class_size[u] as f64 * best;
    }
    Ok(total / n as f64)
}

/// Normalized cohesion and separation of a clustering.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InternalQuality {
    pub intra: f64,
    pub inter: f64,
    pub q: f64,
    /// False when fewer than two clusters are non-empty; `inter` is then 0.
    pub inter_defined: bool,
    /// Largest ÊD over pairs of distinct objects, the normalizer.
    pub max_pairwise: f64,
}

/// intra: mean over clusters of the mean ÊD between distinct members
/// (singletons count 0). inter: mean over cluster pairs of the mean cross ÊD.
/// Both are divided by the largest ÊD between distinct objects of the
/// dataset, so they lie in [0, 1] and Q = inter − intra in [−1, 1].
pub fn internal_quality(assignment: &[usize], k: usize, data: &Dataset) -> Result<InternalQuality> {
    let n = data.len();
    if assignment.len() != n {
        return Err(Error::Argument(format!(
            "{} assignments for {} objects",
            assignment.len(),
            n
        )));
    }
    if let Some(&c) = assignment.iter().find(|&&c| c >= k) {
        return Err(Error::Argument(format!(
            "cluster index {c} out of range for k = {k}"
        )));
    }
    let objects = data.objects();

    // pair_sum[a][b] (a <= b): Σ ÊD over object pairs across clusters a and b
    // (distinct objects within a cluster when a == b).
    let mut pair_sum = vec![vec![0.0; k]; k];
    let mut max_pairwise: f64 = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let d = ed_between_unchecked(&objects[i], &objects[j]);
            max_pairwise = max_pairwise.max(d);
            let (a, b) = (
                assignment[i].min(assignment[j]),
                assignment[i].max(assignment[j]),
            );
            pair_sum[a][b] += d;
        }
    }
    let mut sizes = vec![0usize; k];
    for &c in assignment {
        sizes[c] += 1;
    }
    let clusters: Vec<usize> = (0..k).filter(|&c| sizes[c] > 0).collect();
    let norm = |v: f64| {
        if max_pairwise > 0.0 {
            (v / max_pairwise).clamp(0.0, 1.0)
        } else {
            0.0
        }
    };

    let intra = if clusters.is_empty() {
        0.0
    } else {
        clusters
            .iter()
            .map(|&c| {
                let s = sizes[c] as f64;
                if sizes[c] < 2 {
                    0.0
                } else {
                    // each unordered pair appears twice among ordered pairs
                    2.0 * pair_sum[c][c] / (s * (s - 1.0))
                }
            })
            .sum::<f64>()
            / clusters.len() as f64
    };

    let inter_defined = clusters.len() >= 2;
    let inter = if inter_defined {
        let mut acc = 0.0;
        let mut pairs = 0usize;
        for (x, &a) in clusters.iter().enumerate() {
            for &b in &clusters[x + 1..] {
                acc += pair_sum[a][b] / (sizes[a] as f64 * sizes[b] as f64);
                pairs += 1;
            }
        }
        acc / pairs as f64
    } else {
        0.0
    };

    let (intra, inter) = (norm(intra), norm(inter));
    Ok(InternalQuality {
        intra,
        inter,
        q: inter - intra,
        inter_defined,
        max_pairwise,
    })
}

/// Θ = F(C″) − F(C′): F-measure gain of clustering the uncertain dataset
/// over clustering its perturbed deterministic counterpart.
pub fn theta(f_uncertain: f64, f_perturbed: f64) -> f64 {
    f_uncertain - f_perturbed
}

/// Name of the intra/inter normalization used by [`internal_quality`].
pub const NORMALIZATION: &str = "max_pairwise_expected_distance";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub dataset: String,
    pub algo: String,
    pub k: usize,
    pub seed: u64,
    pub f_measure: Option<f64>,
    pub intra: f64,
    pub inter: f64,
    pub quality_q: f64,
    pub theta: Option<f64>,
    pub wall_time_ms: f64,
    pub normalization: String,
    pub inter_defined: bool,
}

/// Header of the metrics CSV row.
pub const CSV_COLUMNS: [&str; 10] = [
    "dataset", "algo", "k", "seed", "f", "intra", "inter", "q", "theta", "ms",
];

impl EvalReport {
    pub fn csv_row(&self) -> [String; 10] {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        [
            self.dataset.clone(),
            self.algo.clone(),
            self.k.to_string(),
            self.seed.to_string(),
            opt(self.f_measure),
            self.intra.to_string(),
            self.inter.to_string(),
            self.quality_q.to_string(),
            opt(self.theta),
            self.wall_time_ms.to_string(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn pts(xs: &[f64]) -> Dataset {
        Dataset::from_points(&xs.iter().map(|&x| vec![x]).collect::<Vec<_>>(), None).unwrap()
    }

    #[test]
    fn perfect_clustering_scores_one() {
        let labels = ["a", "a", "b", "c", "c"];
        assert_eq!(f_measure(&[2, 2, 0, 1, 1], &labels).unwrap(), 1.0);
    }

    #[test]
    fn single_cluster_over_two_classes() {
        let labels = ["a", "a", "a", "b", "b", "b"];
        assert_relative_eq!(
            f_measure(&[0; 6], &labels).unwrap(),
            2.0 / 3.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn zero_overlap_contributes_nothing() {
        // class "b" only meets cluster 1, and that overlap is partial
        let labels = ["a", "a", "b"];
        let f = f_measure(&[0, 0, 1], &labels).unwrap();
        assert_eq!(f, 1.0);
        let f = f_measure(&[0, 1, 1], &labels).unwrap();
        // a: max(F(a,0)=2·1·0.5/1.5, F(a,1)=2·0.5·0.5/1) = 2/3; b: F(b,1) = 2·0.5·1/1.5 = 2/3
        assert_relative_eq!(f, 2.0 / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn f_measure_length_mismatch() {
        assert!(f_measure(&[0, 1], &["a"]).is_err());
    }

    #[test]
    fn singleton_refinement_formula() {
        let labels = ["a", "a", "a", "b", "c", "c"];
        let singletons: Vec<usize> = (0..6).collect();
        let expected = (3.0 * 2.0 / 4.0 + 1.0 * 2.0 / 2.0 + 2.0 * 2.0 / 3.0) / 6.0;
        assert_relative_eq!(
            f_measure(&singletons, &labels).unwrap(),
            expected,
            max_relative = 1e-15
        );
    }

    #[test]
    fn identical_points_have_zero_quality() {
        let d = pts(&[3.0, 3.0, 3.0, 3.0]);
        let q = internal_quality(&[0, 0, 1, 1], 2, &d).unwrap();
        assert_eq!((q.intra, q.inter, q.q), (0.0, 0.0, 0.0));
    }

    #[test]
    fn separated_pairs() {
        let d = pts(&[0.0, 0.1, 10.0, 10.1]);
        let q = internal_quality(&[0, 0, 1, 1], 2, &d).unwrap();
        assert_relative_eq!(q.intra, 0.01 / 102.01, max_relative = 1e-12);
        assert_relative_eq!(q.inter, 100.005 / 102.01, max_relative = 1e-12);
        assert!(q.q > 0.97);
    }

    #[test]
    fn singletons_have_zero_intra() {
        let d = pts(&[0.0, 1.0, 5.0]);
        let q = internal_quality(&[0, 1, 2], 3, &d).unwrap();
        assert_eq!(q.intra, 0.0);
        assert_eq!(q.q, q.inter);
    }

    #[test]
    fn single_cluster_flags_inter() {
        let d = pts(&[0.0, 1.0, 5.0]);
        let q = internal_quality(&[0, 0, 0], 1, &d).unwrap();
        assert!(!q.inter_defined);
        assert_eq!(q.inter, 0.0);
    }

    #[test]
    fn theta_values() {
        assert_relative_eq!(theta(0.8, 0.6), 0.2, max_relative = 1e-14);
        assert_eq!(theta(0.5, 0.5), 0.0);
        assert_eq!(theta(0.0, 1.0), -1.0);
    }

    proptest! {
        #[test]
        fn f_measure_ignores_relabeling(
            pairs in prop::collection::vec((0usize..4, 0usize..3), 1..40),
            shift in 1usize..4,
        ) {
            let assignment: Vec<usize> = pairs.iter().map(|p| p.0).collect();
            let labels: Vec<usize> = pairs.iter().map(|p| p.1).collect();
            let base = f_measure(&assignment, &labels).unwrap();
            let relabeled: Vec<usize> = assignment.iter().map(|c| (c + shift) % 4).collect();
            let renamed: Vec<String> = labels.iter().map(|l| format!("class-{}", 2 - l)).collect();
            prop_assert!((f_measure(&relabeled, &labels).unwrap() - base).abs() < 1e-12);
            prop_assert!((f_measure(&assignment, &renamed).unwrap() - base).abs() < 1e-12);
            prop_assert!((0.0..=1.0).contains(&base));
        }

        #[test]
        fn quality_is_bounded_and_order_free(
            xs in prop::collection::vec(-50.0f64..50.0, 2..25),
            seed in 0u64..1000,
        ) {
            let k = 3.min(xs.len());
            let assignment: Vec<usize> = (0..xs.len()).map(|i| (i + seed as usize) % k).collect();
            let q = internal_quality(&assignment, k, &pts(&xs)).unwrap();
            prop_assert!((0.0..=1.0).contains(&q.intra));
            prop_assert!((0.0..=1.0).contains(&q.inter));
            prop_assert!((q.q - (q.inter - q.intra)).abs() <= 1e-12);

            let mut order: Vec<usize> = (0..xs.len()).collect();
            order.reverse();
            let xs_rev: Vec<f64> = order.iter().map(|&i| xs[i]).collect();
            let a_rev: Vec<usize> = order.iter().map(|&i| assignment[i]).collect();
            let r = internal_quality(&a_rev, k, &pts(&xs_rev)).unwrap();
            prop_assert!((r.intra - q.intra).abs() < 1e-9);
            prop_assert!((r.inter - q.inter).abs() < 1e-9);
        }
    }
}
