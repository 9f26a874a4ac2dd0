use crate::checks::{self, Check, Fault};
use crate::error::{CliError, CliResult};
use clap::{Args, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Oracle,
    All,
}

/// Run the closed-form identity and sampling-oracle checks.
#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    /// Monte-Carlo samples per oracle comparison.
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
    /// Perturb closed-form values by this relative amount (tests the tester).
    #[arg(long, hide = true)]
    pub inject_fault: Option<f64>,
}

pub fn run(args: &VerifyArgs) -> CliResult<()> {
    if args.samples < 2 {
        return Err(CliError::usage("--samples must be at least 2"));
    }
    let fault = Fault(args.inject_fault.unwrap_or(0.0));
    let mut results: Vec<Check> = Vec::new();
    if matches!(args.suite, Suite::Identities | Suite::All) {
        results.extend(checks::identities(args.seed, fault));
    }
    if matches!(args.suite, Suite::Oracle | Suite::All) {
        results.extend(checks::oracles(args.samples, args.seed, fault));
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&results)?);
    } else {
        for c in &results {
            println!(
                "{} {:<32} {:>9.1} ms  {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.elapsed_ms,
                c.detail
            );
        }
    }
    let failed = results.iter().filter(|c| !c.passed).count();
    if failed > 0 {
        return Err(CliError::verification(format!(
            "{failed} of {} checks failed",
            results.len()
        )));
    }
    Ok(())
}
