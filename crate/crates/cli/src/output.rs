//! Output files and the run manifest.
//!
//! Every file a command produces is staged in memory, then written in order
//! with its SHA-256 recorded in `manifest.json`. CSV files start with `#`
//! comment lines carrying the run id (a hash of the command, parameters and
//! tool version), so they stay gnuplot-ready and contain no timestamps.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::CliResult;

pub const MANIFEST: &str = "manifest.json";

#[derive(Debug, Serialize)]
pub struct OutputEntry {
    pub path: String,
    pub sha256: String,
    pub bytes: usize,
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub parameters: Value,
    pub seed: Option<u64>,
    pub run_id: String,
    pub outputs: Vec<OutputEntry>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Files staged for one command run.
pub struct OutputSet {
    dir: PathBuf,
    command: String,
    parameters: Value,
    seed: Option<u64>,
    run_id: String,
    files: Vec<(String, Vec<u8>)>,
}

impl OutputSet {
    pub fn new(dir: &Path, command: &str, parameters: Value, seed: Option<u64>) -> Self {
        let id_source = serde_json::json!({
            "command": command,
            "parameters": parameters,
            "seed": seed,
            "version": env!("CARGO_PKG_VERSION"),
        });
        let run_id = sha256_hex(id_source.to_string().as_bytes());
        Self {
            dir: dir.to_path_buf(),
            command: command.to_string(),
            parameters,
            seed,
            run_id,
            files: Vec::new(),
        }
    }

    pub fn run_id(&self) -> &str {
        &self.run_id
    }

    /// Stages a CSV built from `header` and numeric rows.
    pub fn csv<R, I>(&mut self, name: &str, description: &str, header: &[&str], rows: I) -> CliResult<()>
    where
        I: IntoIterator<Item = R>,
        R: IntoIterator<Item = String>,
    {
        let mut out = format!("# {description}\n# run {}\n", self.run_id).into_bytes();
        {
            let mut w = csv::WriterBuilder::new().from_writer(&mut out);
            w.write_record(header)?;
            for row in rows {
                w.write_record(row)?;
            }
            w.flush()?;
        }
        self.files.push((name.to_string(), out));
        Ok(())
    }

    pub fn json<T: Serialize>(&mut self, name: &str, value: &T) -> CliResult<()> {
        let mut out = serde_json::to_vec_pretty(value)?;
        out.push(b'\n');
        self.files.push((name.to_string(), out));
        Ok(())
    }

    /// Writes every staged file and the manifest; returns the written paths.
    pub fn finish(self) -> CliResult<Vec<PathBuf>> {
        fs::create_dir_all(&self.dir)?;
        let mut outputs = Vec::new();
        let mut paths = Vec::new();
        for (name, bytes) in &self.files {
            let path = self.dir.join(name);
            fs::write(&path, bytes)?;
            outputs.push(OutputEntry {
                path: name.clone(),
                sha256: sha256_hex(bytes),
                bytes: bytes.len(),
            });
            paths.push(path);
        }
        let manifest = RunManifest {
            tool: "phantom",
            version: env!("CARGO_PKG_VERSION"),
            command: self.command,
            parameters: self.parameters,
            seed: self.seed,
            run_id: self.run_id,
            outputs,
        };
        let mut bytes = serde_json::to_vec_pretty(&manifest)?;
        bytes.push(b'\n');
        let path = self.dir.join(MANIFEST);
        fs::write(&path, bytes)?;
        paths.push(path);
        Ok(paths)
    }
}

/// Shortest round-trip decimal form, in exponent notation outside
/// `[1e-4, 1e15)`; `NA` for non-finite values.
pub fn num(v: f64) -> String {
    if !v.is_finite() {
        "NA".to_string()
    } else if v == 0.0 || (1e-4..1e15).contains(&v.abs()) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}
