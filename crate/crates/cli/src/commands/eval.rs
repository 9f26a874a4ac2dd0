use super::cluster::AssignmentFile;
use crate::error::{CliError, CliResult};
use crate::files::{self, Input};
use crate::manifest::{elapsed_ms, RunManifest};
use clap::Args;
use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::time::Instant;
use ucpc_core::eval::{f_measure, internal_quality, theta, EvalReport, CSV_COLUMNS, NORMALIZATION};
use ucpc_core::Dataset;

/// Score an assignment: F-measure against reference labels, intra/inter/Q,
/// and optionally Θ against a clustering of the perturbed dataset.
#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Dataset the assignment was computed on.
    pub dataset: PathBuf,
    pub assignment: PathBuf,
    /// Reference classes: CSV with columns id,label (or a single label
    /// column in dataset order). Defaults to the dataset's own labels.
    #[arg(long)]
    pub reference: Option<PathBuf>,
    /// Assignment computed on the perturbed deterministic dataset; enables Θ.
    #[arg(long)]
    pub perturbed: Option<PathBuf>,
    /// JSON report path.
    #[arg(long, short, default_value = "metrics.json")]
    pub out: PathBuf,
    /// Metrics CSV path; a row is appended, with a header if the file is new.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

fn read_assignment(path: &Path) -> CliResult<AssignmentFile> {
    let input = Input::read(path)?;
    serde_json::from_slice(&input.bytes)
        .map_err(|e| CliError::from(e).context(format!("reading {}", path.display())))
}

/// Cluster indices in dataset order; ids must match the dataset exactly.
fn aligned(data: &Dataset, file: &AssignmentFile, what: &str) -> CliResult<Vec<usize>> {
    if file.assignment.len() != data.len() {
        return Err(CliError::data(format!(
            "{what} has {} entries for {} objects",
            file.assignment.len(),
            data.len()
        )));
    }
    data.objects()
        .iter()
        .map(|o| {
            let c = *file.assignment.get(o.id()).ok_or_else(|| {
                CliError::data(format!("{what} has no entry for object id {:?}", o.id()))
            })?;
            if c >= file.k {
                return Err(CliError::data(format!(
                    "{what}: cluster {c} out of range for k = {}",
                    file.k
                )));
            }
            Ok(c)
        })
        .collect()
}

fn read_reference(path: &Path, data: &Dataset) -> CliResult<Vec<String>> {
    let input = Input::read(path)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(&input.bytes[..]);
    let mut by_id = HashMap::new();
    let mut in_order = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        match record.len() {
            1 => in_order.push(record[0].to_string()),
            2 => {
                if by_id
                    .insert(record[0].to_string(), record[1].to_string())
                    .is_some()
                {
                    return Err(CliError::data(format!(
                        "duplicate id {:?} in {}",
                        &record[0],
                        path.display()
                    )));
                }
            }
            n => {
                return Err(CliError::data(format!(
                    "{}: row {} has {n} fields, expected 1 or 2",
                    path.display(),
                    i + 2
                )))
            }
        }
    }
    if !by_id.is_empty() {
        return data
            .objects()
            .iter()
            .map(|o| {
                by_id.get(o.id()).cloned().ok_or_else(|| {
                    CliError::data(format!("no reference label for object id {:?}", o.id()))
                })
            })
            .collect();
    }
    if in_order.len() != data.len() {
        return Err(CliError::data(format!(
            "{} reference labels for {} objects",
            in_order.len(),
            data.len()
        )));
    }
    Ok(in_order)
}

pub fn run(args: &EvalArgs) -> CliResult<()> {
    let mut manifest = RunManifest::new(
        "eval",
        serde_json::json!({ "normalization": NORMALIZATION }),
    );
    let input = Input::read(&args.dataset)?;
    manifest.input(&input.path, &input.sha256);
    let data = input.dataset()?;
    let file = read_assignment(&args.assignment)?;
    manifest.seeds.push(file.seed);
    let assignment = aligned(&data, &file, "assignment")?;

    let reference = match &args.reference {
        Some(path) => Some(read_reference(path, &data)?),
        None => data.labels().map(<[String]>::to_vec),
    };

    let start = Instant::now();
    let f = reference
        .as_ref()
        .map(|r| f_measure(&assignment, r))
        .transpose()?;
    let quality = internal_quality(&assignment, file.k, &data)?;
    let theta = match &args.perturbed {
        Some(path) => {
            let reference = reference
                .as_ref()
                .ok_or_else(|| CliError::usage("Θ needs reference labels"))?;
            let perturbed = read_assignment(path)?;
            let perturbed = aligned(&data, &perturbed, "perturbed assignment")?;
            let fp = f_measure(&perturbed, reference)?;
            Some(theta(f.expect("labels present"), fp))
        }
        None => None,
    };
    manifest
        .phases_ms
        .insert("evaluation".into(), elapsed_ms(start));

    let report = EvalReport {
        dataset: input.stem(),
        algo: file.algo.name().into(),
        k: file.k,
        seed: file.seed,
        f_measure: f,
        intra: quality.intra,
        inter: quality.inter,
        quality_q: quality.q,
        theta,
        wall_time_ms: file.clustering_ms,
        normalization: NORMALIZATION.into(),
        inter_defined: quality.inter_defined,
    };
    files::write_json(&args.out, &report)?;
    manifest.output(&args.out);

    if let Some(path) = &args.csv {
        let fresh = !path.exists() || std::fs::metadata(path)?.len() == 0;
        let file = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)?;
        let mut w = csv::Writer::from_writer(file);
        if fresh {
            w.write_record(CSV_COLUMNS)?;
        }
        w.write_record(report.csv_row())?;
        w.flush()?;
        manifest.output(path);
    }
    let manifest_path = files::manifest_path(&args.out);
    manifest.output(&manifest_path);
    files::write_json(&manifest_path, &manifest)?;
    println!("{}", serde_json::to_string(&report)?);
    Ok(())
}
