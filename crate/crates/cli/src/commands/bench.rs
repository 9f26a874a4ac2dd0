use super::cluster::AlgoArg;
use crate::error::{CliError, CliResult};
use crate::files::{self, Input};
use crate::manifest::{elapsed_ms, RunManifest};
use clap::Args;
use rand::seq::SliceRandom;
use serde::Serialize;
use std::path::PathBuf;
use std::time::Instant;
use ucpc_core::algorithms::{self, Algorithm, ClusterConfig};
use ucpc_core::rng::derived;

/// Time clustering runs, optionally over random subsets of growing size.
#[derive(Debug, Args)]
pub struct BenchArgs {
    pub dataset: PathBuf,
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "ucpc,ukmeans,mmvar"
    )]
    pub algos: Vec<AlgoArg>,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 5)]
    pub repeats: usize,
    /// Dataset fractions for a size sweep, e.g. "0.05,0.25,0.5,1".
    #[arg(long, value_delimiter = ',', default_value = "1")]
    pub fractions: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub max_sweeps: usize,
    #[arg(long, default_value_t = 1000)]
    pub mc_samples: usize,
    /// Per-repeat timing CSV.
    #[arg(long, short, default_value = "bench.csv")]
    pub out: PathBuf,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub algo: String,
    pub fraction: f64,
    pub n: usize,
    pub repeat: usize,
    pub ms: f64,
    pub sweeps: usize,
    pub ms_per_sweep: f64,
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}

pub fn run(args: &BenchArgs) -> CliResult<()> {
    if args.repeats < 3 {
        return Err(CliError::usage("--repeats must be at least 3"));
    }
    if let Some(f) = args.fractions.iter().find(|f| !(**f > 0.0 && **f <= 1.0)) {
        return Err(CliError::usage(format!("fraction {f} outside (0, 1]")));
    }
    if args.algos.is_empty() {
        return Err(CliError::usage("no algorithms given"));
    }
    let mut manifest = RunManifest::new(
        "bench",
        serde_json::json!({
            "algos": args.algos.iter().map(|a| Algorithm::from(*a).name()).collect::<Vec<_>>(),
            "k": args.k,
            "repeats": args.repeats,
            "fractions": args.fractions,
            "max_sweeps": args.max_sweeps,
            "mc_samples": args.mc_samples,
        }),
    );
    manifest.seeds.push(args.seed);
    let input = Input::read(&args.dataset)?;
    manifest.input(&input.path, &input.sha256);
    let data = manifest.time("load_and_moments", || input.dataset())?;

    let mut order: Vec<usize> = (0..data.len()).collect();
    order.shuffle(&mut derived(args.seed, 0));

    let mut rows = Vec::new();
    println!(
        "{:<8} {:>8} {:>8} {:>12} {:>14}",
        "algo", "fraction", "n", "median_ms", "median_ms/sweep"
    );
    for &fraction in &args.fractions {
        let n = ((data.len() as f64 * fraction).round() as usize).clamp(1, data.len());
        let mut picked = order[..n].to_vec();
        picked.sort_unstable();
        let sub = data.subset(&picked)?;
        for &algo in &args.algos {
            let algo = Algorithm::from(algo);
            let (mut ms, mut per_sweep) = (Vec::new(), Vec::new());
            // repeats run one after another so timings do not compete
            for repeat in 0..args.repeats {
                let cfg = ClusterConfig::new(args.k)
                    .with_seed(args.seed.wrapping_add(repeat as u64))
                    .with_max_sweeps(args.max_sweeps)
                    .with_mc_samples(args.mc_samples);
                let start = Instant::now();
                let c = algorithms::run(algo, &sub, &cfg)?;
                let t = elapsed_ms(start);
                let sweeps = c.sweeps_used.max(1);
                ms.push(t);
                per_sweep.push(t / sweeps as f64);
                rows.push(BenchRow {
                    algo: algo.name().into(),
                    fraction,
                    n,
                    repeat,
                    ms: t,
                    sweeps: c.sweeps_used,
                    ms_per_sweep: t / sweeps as f64,
                });
            }
            println!(
                "{:<8} {:>8} {:>8} {:>12.3} {:>14.3}",
                algo.name(),
                fraction,
                n,
                median(&mut ms),
                median(&mut per_sweep)
            );
        }
    }

    let mut w = csv::Writer::from_writer(files::create(&args.out)?);
    for row in &rows {
        w.serialize(row)?;
    }
    w.flush()?;
    manifest.output(&args.out);
    let manifest_path = files::manifest_path(&args.out);
    manifest.output(&manifest_path);
    files::write_json(&manifest_path, &manifest)?;
    Ok(())
}
