use crate::error::{CliError, CliResult};
use crate::files::{self, Input};
use crate::manifest::{elapsed_ms, RunManifest};
use clap::{Args, ValueEnum};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use std::time::Instant;
use ucpc_core::algorithms::{self, Algorithm, ClusterConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Ucpc,
    Ukmeans,
    Mmvar,
    Bukm,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Ucpc => Algorithm::Ucpc,
            AlgoArg::Ukmeans => Algorithm::UkMeans,
            AlgoArg::Mmvar => Algorithm::MmVar,
            AlgoArg::Bukm => Algorithm::BasicUkMeans,
        }
    }
}

/// Cluster a dataset and write the assignment.
#[derive(Debug, Args)]
pub struct ClusterArgs {
    /// Dataset JSON, or a CSV of points (read as point masses).
    pub dataset: PathBuf,
    #[arg(long, value_enum, default_value = "ucpc")]
    pub algo: AlgoArg,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub restarts: usize,
    #[arg(long, default_value_t = 100)]
    pub max_sweeps: usize,
    /// Draws per object for bukm.
    #[arg(long, default_value_t = 10_000)]
    pub mc_samples: usize,
    #[arg(long, short, default_value = "assignment.json")]
    pub out: PathBuf,
}

/// Result file of `cluster`, read back by `eval`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AssignmentFile {
    pub algo: Algorithm,
    pub k: usize,
    pub seed: u64,
    pub restarts: usize,
    pub objective: f64,
    pub sweeps: usize,
    pub trace: Vec<f64>,
    /// Object id → cluster index, in dataset order.
    pub assignment: IndexMap<String, usize>,
    /// Wall time of the clustering loop alone.
    pub clustering_ms: f64,
}

pub fn run(args: &ClusterArgs) -> CliResult<()> {
    let algo: Algorithm = args.algo.into();
    let cfg = ClusterConfig::new(args.k)
        .with_seed(args.seed)
        .with_restarts(args.restarts)
        .with_max_sweeps(args.max_sweeps)
        .with_mc_samples(args.mc_samples);

    let mut config = serde_json::to_value(&cfg)?;
    config["algo"] = serde_json::to_value(algo)?;
    let mut manifest = RunManifest::new("cluster", config);
    manifest.seeds.push(args.seed);

    // Off-line phase: parsing plus moment precomputation.
    let input = Input::read(&args.dataset)?;
    manifest.input(&input.path, &input.sha256);
    let data = manifest.time("load_and_moments", || input.dataset())?;
    cfg.validate(data.len())?;

    let start = Instant::now();
    let clustering = algorithms::run(algo, &data, &cfg)?;
    let clustering_ms = elapsed_ms(start);
    manifest
        .phases_ms
        .insert("clustering".into(), clustering_ms);

    if clustering.assignment.len() != data.len() {
        return Err(CliError::data("assignment length does not match dataset"));
    }
    let file = AssignmentFile {
        algo,
        k: args.k,
        seed: args.seed,
        restarts: args.restarts,
        objective: clustering.objective,
        sweeps: clustering.sweeps_used,
        trace: clustering.trace.clone(),
        assignment: data
            .objects()
            .iter()
            .zip(&clustering.assignment)
            .map(|(o, &c)| (o.id().to_string(), c))
            .collect(),
        clustering_ms,
    };
    files::write_json(&args.out, &file)?;
    manifest.output(&args.out);
    let manifest_path = files::manifest_path(&args.out);
    manifest.output(&manifest_path);
    files::write_json(&manifest_path, &manifest)?;
    log::info!(
        "{}: objective {} after {} sweeps in {:.1} ms",
        algo.name(),
        clustering.objective,
        clustering.sweeps_used,
        clustering_ms
    );
    Ok(())
}
