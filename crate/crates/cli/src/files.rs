//! Reading inputs and writing outputs.

use crate::error::{CliError, CliResult};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use ucpc_core::model::io::{read_dataset_json, read_points_csv, LabelColumn};
use ucpc_core::Dataset;

/// Raw bytes of an input file plus its digest.
pub struct Input {
    pub path: PathBuf,
    pub bytes: Vec<u8>,
    pub sha256: String,
}

impl Input {
    pub fn read(path: &Path) -> CliResult<Self> {
        let bytes = fs::read(path)
            .map_err(|e| CliError::from(e).context(format!("reading {}", path.display())))?;
        let sha256 = hex::encode(Sha256::digest(&bytes));
        Ok(Input {
            path: path.to_path_buf(),
            bytes,
            sha256,
        })
    }

    pub fn is_csv(&self) -> bool {
        self.path
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
    }

    /// Dataset JSON, or a point CSV read as point masses.
    pub fn dataset(&self) -> CliResult<Dataset> {
        let parsed = if self.is_csv() {
            read_points_csv(&self.bytes[..], LabelColumn::Auto).and_then(|t| t.to_dataset())
        } else {
            read_dataset_json(&self.bytes[..])
        };
        parsed.map_err(|e| CliError::from(e).context(format!("loading {}", self.path.display())))
    }

    pub fn stem(&self) -> String {
        self.path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    ensure_parent(path)?;
    let file = fs::File::create(path)
        .map_err(|e| CliError::from(e).context(format!("creating {}", path.display())))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value)?;
    use std::io::Write;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

pub fn create(path: &Path) -> CliResult<BufWriter<fs::File>> {
    ensure_parent(path)?;
    let file = fs::File::create(path)
        .map_err(|e| CliError::from(e).context(format!("creating {}", path.display())))?;
    Ok(BufWriter::new(file))
}

fn ensure_parent(path: &Path) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    Ok(())
}

/// `dir/name.ext` → `dir/name.manifest.json`.
pub fn manifest_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "run".into());
    out.with_file_name(format!("{stem}.manifest.json"))
}
