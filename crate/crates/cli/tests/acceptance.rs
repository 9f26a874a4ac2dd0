//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Runs as a plain binary (no libtest harness) so the
//! report prints in criterion order.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;
use ucpc_cli::checks::{self, Check, Fault};
use ucpc_cli::commands::cluster::AssignmentFile;
use ucpc_core::algorithms::{
    self, initial_partition, relocation_search, Algorithm, ClusterConfig, Objective,
};
use ucpc_core::datagen::{gaussian_groups, generate, random_dataset, Family, GenConfig, Range};
use ucpc_core::eval::{f_measure, EvalReport};
use ucpc_core::model::io::{read_dataset_json, write_points_csv};
use ucpc_core::oracle::exhaustive_best_clustering;
use ucpc_core::rng::{derive_seed, derived};

const SEED: u64 = 20_240_601;

struct Outcome {
    passed: bool,
    detail: String,
}

fn with_limit(check: Check, limit: Duration) -> Outcome {
    let ms = check.elapsed_ms;
    let in_time = ms <= limit.as_secs_f64() * 1e3;
    Outcome {
        passed: check.passed && in_time,
        detail: format!("{} [{ms:.0} ms, limit {:?}]", check.detail, limit),
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (passed, detail) = f();
    let elapsed = start.elapsed();
    Outcome {
        passed: passed && elapsed <= limit,
        detail: format!(
            "{detail} [{:.0} ms, limit {limit:?}]",
            elapsed.as_secs_f64() * 1e3
        ),
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn termination() -> Outcome {
    timed(secs(60), || {
        let mut violations = 0;
        let mut max_sweeps_seen = 0;
        for run in 0..100u64 {
            let mut rng = derived(SEED, 10_000 + run);
            let n = rng.random_range(10..=200);
            let m = rng.random_range(1..=6);
            let k = rng.random_range(1..=8usize.min(n));
            let max_sweeps = rng.random_range(1..=30);
            let d = random_dataset(n, m, derive_seed(SEED, run)).unwrap();
            let cfg = ClusterConfig::new(k)
                .with_seed(rng.random())
                .with_max_sweeps(max_sweeps);
            let c = algorithms::ucpc(&d, &cfg).unwrap();
            let monotone = c.trace.windows(2).all(|w| w[1] <= w[0]);
            if !monotone || c.sweeps_used > max_sweeps || c.trace.len() != c.sweeps_used + 1 {
                violations += 1;
            }
            max_sweeps_seen = max_sweeps_seen.max(c.sweeps_used);
        }
        (
            violations == 0,
            format!("100 runs, {violations} violations, longest run {max_sweeps_seen} sweeps"),
        )
    })
}

fn global_optimum() -> Outcome {
    timed(secs(60), || {
        let mut hits = 0;
        let mut worse = 0;
        for inst in 0..50u64 {
            let mut rng = derived(SEED, 20_000 + inst);
            let n = rng.random_range(6..=8);
            let d = random_dataset(n, 2, derive_seed(SEED, 30_000 + inst)).unwrap();
            let (_, best) = exhaustive_best_clustering(&d, 2, Objective::Ucpc).unwrap();
            let cfg = ClusterConfig::new(2)
                .with_seed(rng.random())
                .with_restarts(20);
            let c = algorithms::ucpc(&d, &cfg).unwrap();
            if (c.objective - best).abs() <= 1e-9 * best.abs().max(f64::MIN_POSITIVE) {
                hits += 1;
            }
            if c.objective < best * (1.0 - 1e-9) {
                // the enumeration must never be beaten
                worse += 1;
            }
        }
        (
            hits >= 45 && worse == 0,
            format!("{hits}/50 instances reach the exhaustive optimum (need 45)"),
        )
    })
}

fn directional_accuracy() -> Outcome {
    timed(secs(300), || {
        let algos = [Algorithm::Ucpc, Algorithm::UkMeans, Algorithm::MmVar];
        let mut sums = [0.0f64; 3];
        let mut runs = 0usize;
        for ds in 0..20u64 {
            let (points, labels) =
                gaussian_groups(300, 4, 3, 4.0, 1.0, derive_seed(SEED, 40_000 + ds));
            let mut cfg = GenConfig::new(Family::Normal, derive_seed(SEED, 50_000 + ds));
            // wide spread range: per-object variances differ by up to 100x
            cfg.normal_stddev = Range::new(0.02, 0.20);
            let data = generate(&points, Some(labels.clone()), &cfg)
                .unwrap()
                .uncertain;
            for seed in 0..50u64 {
                for (a, algo) in algos.iter().enumerate() {
                    let c = algorithms::run(*algo, &data, &ClusterConfig::new(3).with_seed(seed))
                        .unwrap();
                    sums[a] += f_measure(&c.assignment, &labels).unwrap();
                }
                runs += 1;
            }
        }
        let mean = sums.map(|s| s / runs as f64);
        (
            mean[0] >= mean[1] && mean[0] >= mean[2],
            format!(
                "mean F over {runs} runs: ucpc {:.4}, ukmeans {:.4}, mmvar {:.4}",
                mean[0], mean[1], mean[2]
            ),
        )
    })
}

fn per_sweep_ms(n: usize) -> f64 {
    let d = random_dataset(n, 4, derive_seed(SEED, 60_000 + n as u64)).unwrap();
    let cfg = ClusterConfig::new(23).with_max_sweeps(1);
    let mut times: Vec<f64> = (0..7)
        .map(|r| {
            let init = initial_partition(&d, 23, r).unwrap();
            let start = Instant::now();
            let c = relocation_search(&d, init, Objective::Ucpc, &cfg).unwrap();
            assert_eq!(c.sweeps_used, 1);
            start.elapsed().as_secs_f64() * 1e3
        })
        .collect();
    times.sort_by(f64::total_cmp);
    times[times.len() / 2]
}

fn linear_sweeps() -> Outcome {
    timed(secs(300), || {
        let sizes = [10_000, 20_000, 40_000];
        let ms: Vec<f64> = sizes.iter().map(|&n| per_sweep_ms(n)).collect();
        let ratios = [ms[1] / ms[0], ms[2] / ms[1]];
        (
            ratios.iter().all(|&r| r <= 2.5),
            format!(
                "median ms/sweep {:.2} / {:.2} / {:.2} at n = 10k/20k/40k, growth {:.2}x, {:.2}x (limit 2.5x)",
                ms[0], ms[1], ms[2], ratios[0], ratios[1]
            ),
        )
    })
}

fn run_cli(args: &[&str], dir: &Path) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_ucpc"))
        .args(args)
        .current_dir(dir)
        .output()
        .map_err(|e| e.to_string())?;
    if out.status.success() {
        Ok(String::from_utf8_lossy(&out.stdout).into_owned())
    } else {
        Err(format!(
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr).trim()
        ))
    }
}

fn pipeline() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (points, labels) = gaussian_groups(150, 4, 3, 3.0, 0.6, SEED);
    let names = ["setosa", "versicolor", "virginica"];
    let labels: Vec<String> = labels
        .iter()
        .map(|l| names[l[1..].parse::<usize>().unwrap()].to_string())
        .collect();
    let file = std::fs::File::create(dir.path().join("points.csv")).map_err(|e| e.to_string())?;
    write_points_csv(&points, Some(&labels), file).map_err(|e| e.to_string())?;

    run_cli(
        &[
            "gen",
            "points.csv",
            "--family",
            "normal",
            "--seed",
            "7",
            "--out-dir",
            "gen",
        ],
        dir.path(),
    )?;
    run_cli(
        &[
            "cluster",
            "gen/uncertain.json",
            "--algo",
            "ucpc",
            "--k",
            "3",
            "--seed",
            "1",
            "--restarts",
            "5",
            "-o",
            "a.json",
        ],
        dir.path(),
    )?;
    run_cli(
        &[
            "eval",
            "gen/uncertain.json",
            "a.json",
            "-o",
            "m.json",
            "--csv",
            "m.csv",
        ],
        dir.path(),
    )?;

    // every output parses into its schema
    let data =
        read_dataset_json(std::fs::File::open(dir.path().join("gen/uncertain.json")).unwrap())
            .map_err(|e| e.to_string())?;
    if data.len() != 150 || data.dim() != 4 || data.labels().is_none() {
        return Err("uncertain dataset has the wrong shape".into());
    }
    let read = |p: &str| std::fs::read(dir.path().join(p)).map_err(|e| format!("{p}: {e}"));
    let mut assignment: AssignmentFile =
        serde_json::from_slice(&read("a.json")?).map_err(|e| e.to_string())?;
    let report: EvalReport = serde_json::from_slice(&read("m.json")?).map_err(|e| e.to_string())?;
    for p in [
        "gen/perturbed.csv",
        "gen/manifest.json",
        "a.manifest.json",
        "m.manifest.json",
        "m.csv",
    ] {
        read(p)?;
    }
    let clustered_f = report.f_measure.ok_or("report lacks an F-measure")?;

    // a perfect assignment scores F = 1
    for (o, label) in data.objects().iter().zip(data.labels().unwrap()) {
        let class = names.iter().position(|n| n == label).unwrap();
        assignment.assignment.insert(o.id().to_string(), class);
    }
    std::fs::write(
        dir.path().join("perfect.json"),
        serde_json::to_vec(&assignment).unwrap(),
    )
    .unwrap();
    run_cli(
        &["eval", "gen/uncertain.json", "perfect.json", "-o", "p.json"],
        dir.path(),
    )?;
    let perfect: EvalReport =
        serde_json::from_slice(&read("p.json")?).map_err(|e| e.to_string())?;
    if perfect.f_measure != Some(1.0) {
        return Err(format!(
            "perfect assignment scored F = {:?}",
            perfect.f_measure
        ));
    }
    Ok(format!(
        "gen -> cluster -> eval on 150x4, 3 classes: clustered F = {clustered_f:.4}, Q = {:.4}; perfect F = 1",
        report.quality_q
    ))
}

fn cli_round_trip() -> Outcome {
    timed(secs(10), || match pipeline() {
        Ok(detail) => (true, detail),
        Err(e) => (false, e),
    })
}

type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn main() {
    let criteria: Vec<Criterion> = vec![
        (
            "J_MM = J_UK/|C| on 200 clusters",
            Box::new(|| {
                with_limit(
                    checks::mixture_variance_identity(200, SEED, Fault::default()),
                    secs(1),
                )
            }),
        ),
        (
            "J_hat = 2 J_UK on 200 clusters",
            Box::new(|| {
                with_limit(
                    checks::mixture_distance_identity(200, SEED, Fault::default()),
                    secs(1),
                )
            }),
        ),
        (
            "UK-means variance-blindness witness",
            Box::new(|| with_limit(checks::variance_blind_witness(Fault::default()), secs(1))),
        ),
        (
            "U-centroid variance vs 1e5 realizations",
            Box::new(|| {
                with_limit(
                    checks::centroid_variance_oracle(20, 100_000, SEED, Fault::default()),
                    secs(10),
                )
            }),
        ),
        (
            "UCPC objective vs MC at 1e5 samples",
            Box::new(|| {
                with_limit(
                    checks::objective_oracle(20, 100_000, SEED, Fault::default()),
                    secs(30),
                )
            }),
        ),
        (
            "ED(o, y) vs MC at 1e5 samples",
            Box::new(|| {
                with_limit(
                    checks::point_distance_oracle(50, 100_000, SEED, Fault::default()),
                    secs(10),
                )
            }),
        ),
        (
            "incremental statistics drift",
            Box::new(|| {
                with_limit(
                    checks::incremental_drift(10_000, 100, SEED, Fault::default()),
                    secs(5),
                )
            }),
        ),
        (
            "centroid variance vs J discriminator",
            Box::new(|| {
                with_limit(
                    checks::centroid_variance_discriminator(Fault::default()),
                    secs(1),
                )
            }),
        ),
        (
            "UCPC termination and monotone traces",
            Box::new(termination),
        ),
        (
            "global optimum on small instances",
            Box::new(global_optimum),
        ),
        ("directional F-measure", Box::new(directional_accuracy)),
        ("linear per-sweep time", Box::new(linear_sweeps)),
        ("CLI round trip", Box::new(cli_round_trip)),
    ];

    let mut failed = 0;
    for (i, (name, criterion)) in criteria.iter().enumerate() {
        let outcome = criterion();
        if !outcome.passed {
            failed += 1;
        }
        println!(
            "{} {:>2} {name}: {}",
            if outcome.passed { "PASS" } else { "FAIL" },
            i + 1,
            outcome.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
