use crate::error::{CliError, CliResult};
use crate::files::{self, Input};
use crate::manifest::RunManifest;
use clap::{Args, ValueEnum};
use std::path::PathBuf;
use ucpc_core::datagen::{self, Family, GenConfig, Range};
use ucpc_core::model::io::{read_points_csv, write_dataset_json, write_points_csv, LabelColumn};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyArg {
    Uniform,
    Normal,
    Exponential,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Uniform => Family::Uniform,
            FamilyArg::Normal => Family::Normal,
            FamilyArg::Exponential => Family::Exponential,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum LabelArg {
    /// Last column is a label when it is not numeric.
    Auto,
    Last,
    None,
}

impl From<LabelArg> for LabelColumn {
    fn from(l: LabelArg) -> Self {
        match l {
            LabelArg::Auto => LabelColumn::Auto,
            LabelArg::Last => LabelColumn::Last,
            LabelArg::None => LabelColumn::None,
        }
    }
}

/// Attach a random pdf to every point of a CSV and write the perturbed and
/// uncertain datasets.
#[derive(Debug, Args)]
pub struct GenArgs {
    /// Deterministic points, one per row.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "normal")]
    pub family: FamilyArg,
    /// Fraction of each pdf's mass kept in its region.
    #[arg(long, default_value_t = 0.95)]
    pub coverage: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "auto")]
    pub labels: LabelArg,
    /// Spread range as fractions of each dimension's data range, "lo,hi".
    /// Defaults depend on the family.
    #[arg(long, value_parser = parse_range)]
    pub spread: Option<Range>,
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
}

fn parse_range(s: &str) -> Result<Range, String> {
    let (a, b) = s.split_once(',').ok_or("expected \"lo,hi\"")?;
    let lo: f64 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: f64 = b.trim().parse().map_err(|e| format!("{e}"))?;
    Ok(Range::new(lo, hi))
}

pub fn run(args: &GenArgs) -> CliResult<()> {
    let family: Family = args.family.into();
    let mut cfg = GenConfig::new(family, args.seed).with_coverage(args.coverage);
    if let Some(r) = args.spread {
        match family {
            Family::Uniform => cfg.uniform_half_width = r,
            Family::Normal => cfg.normal_stddev = r,
            Family::Exponential => cfg.exponential_scale = r,
        }
    }
    cfg.validate()?;

    let mut manifest = RunManifest::new("gen", serde_json::to_value(&cfg)?);
    manifest.seeds.push(args.seed);
    let input = Input::read(&args.input)?;
    manifest.input(&input.path, &input.sha256);

    let table = manifest
        .time("load", || {
            read_points_csv(&input.bytes[..], args.labels.into())
        })
        .map_err(|e| CliError::from(e).context(format!("loading {}", input.path.display())))?;
    if table.points.is_empty() {
        return Err(CliError::data(format!(
            "{} holds no points",
            input.path.display()
        )));
    }
    let generated = manifest.time("generate", || {
        datagen::generate(&table.points, table.labels.clone(), &cfg)
    })?;

    let perturbed_path = args.out_dir.join("perturbed.csv");
    let uncertain_path = args.out_dir.join("uncertain.json");
    manifest.time("write", || -> CliResult<()> {
        write_points_csv(
            &generated.perturbed,
            table.labels.as_deref(),
            files::create(&perturbed_path)?,
        )?;
        let mut w = files::create(&uncertain_path)?;
        write_dataset_json(&generated.uncertain, &mut w)?;
        use std::io::Write;
        writeln!(w)?;
        w.flush()?;
        Ok(())
    })?;
    manifest.output(&perturbed_path);
    manifest.output(&uncertain_path);
    let manifest_path = args.out_dir.join("manifest.json");
    manifest.output(&manifest_path);
    files::write_json(&manifest_path, &manifest)?;
    log::info!(
        "{} objects, m = {}, written to {}",
        generated.uncertain.len(),
        generated.uncertain.dim(),
        args.out_dir.display()
    );
    Ok(())
}
