//! Command-line front end: dataset generation, clustering, evaluation,
//! verification and benchmarking of uncertain-object clustering.

pub mod checks;
pub mod commands;
pub mod error;
pub mod files;
pub mod manifest;

use clap::{Parser, Subcommand};
use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "ucpc",
    version,
    about = "Clustering of uncertain objects",
    propagate_version = true
)]
pub struct Cli {
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true, env = "UCPC_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    Gen(commands::gen::GenArgs),
    Cluster(commands::cluster::ClusterArgs),
    Eval(commands::eval::EvalArgs),
    Verify(commands::verify::VerifyArgs),
    Bench(commands::bench::BenchArgs),
}

pub fn run(cli: &Cli) -> CliResult<()> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::usage("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::usage(format!("thread pool: {e}")))?;
    }
    match &cli.command {
        Command::Gen(a) => commands::gen::run(a),
        Command::Cluster(a) => commands::cluster::run(a),
        Command::Eval(a) => commands::eval::run(a),
        Command::Verify(a) => commands::verify::run(a),
        Command::Bench(a) => commands::bench::run(a),
    }
}
