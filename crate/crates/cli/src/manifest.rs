use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::time::Instant;

/// Everything needed to reproduce a run and to locate its outputs.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub command_line: Vec<String>,
    pub config: serde_json::Value,
    pub seeds: Vec<u64>,
    pub inputs: Vec<InputDigest>,
    /// Wall time per phase, in milliseconds, in execution order.
    pub phases_ms: IndexMap<String, f64>,
    pub outputs: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl RunManifest {
    pub fn new(command: &str, config: serde_json::Value) -> Self {
        RunManifest {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            command_line: std::env::args().collect(),
            config,
            seeds: Vec::new(),
            inputs: Vec::new(),
            phases_ms: IndexMap::new(),
            outputs: Vec::new(),
        }
    }

    pub fn input(&mut self, path: &Path, sha256: &str) {
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: sha256.into(),
        });
    }

    pub fn output(&mut self, path: &Path) {
        self.outputs.push(path.display().to_string());
    }

    /// Runs `f`, recording its wall time under `phase`.
    pub fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.phases_ms.insert(phase.into(), elapsed_ms(start));
        out
    }
}

pub fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}
