//! CSV, JSON and run-manifest output.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::CliError;

/// Formats a number with 17 significant digits.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Per-column comparison tolerance recorded in the manifest.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

/// Collects the outputs of one command and writes them either to `--out`
/// or to the standard streams.
pub struct Sink {
    command: &'static str,
    dir: Option<PathBuf>,
    problem_sha256: Option<String>,
    config: Value,
    outputs: Vec<String>,
    tolerances: serde_json::Map<String, Value>,
}

impl Sink {
    pub fn new(command: &'static str, dir: Option<&Path>) -> Result<Self, CliError> {
        if let Some(d) = dir {
            fs::create_dir_all(d).map_err(|e| {
                CliError::Validation(format!(
                    "cannot create output directory {}: {e}",
                    d.display()
                ))
            })?;
        }
        Ok(Sink {
            command,
            dir: dir.map(Path::to_path_buf),
            problem_sha256: None,
            config: Value::Null,
            outputs: Vec::new(),
            tolerances: serde_json::Map::new(),
        })
    }

    pub fn problem_bytes(&mut self, bytes: &[u8]) {
        self.problem_sha256 = Some(sha256_hex(bytes));
    }

    pub fn config(&mut self, config: Value) {
        self.config = config;
    }

    /// Writes `rows` under `header`. Without `--out` the CSV goes to stdout.
    pub fn csv(
        &mut self,
        name: &str,
        header: &[&str],
        rows: impl IntoIterator<Item = Vec<f64>>,
        tol: Tolerance,
    ) -> Result<(), CliError> {
        let mut text = header.join(",");
        text.push('\n');
        for row in rows {
            let cells: Vec<String> = row.into_iter().map(num).collect();
            text.push_str(&cells.join(","));
            text.push('\n');
        }
        let cols: serde_json::Map<String, Value> =
            header.iter().map(|h| (h.to_string(), json!(tol))).collect();
        self.tolerances
            .insert(name.to_string(), Value::Object(cols));
        self.write(name, &text, true)
    }

    /// Writes a JSON summary. Without `--out` it goes to stdout when
    /// `primary`, else to stderr.
    pub fn json(&mut self, name: &str, value: &Value, primary: bool) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(value).expect("JSON values serialize") + "\n";
        self.write(name, &text, primary)
    }

    fn write(&mut self, name: &str, text: &str, primary: bool) -> Result<(), CliError> {
        match &self.dir {
            Some(d) => {
                let path = d.join(name);
                fs::write(&path, text).map_err(|e| io_err(&path, e))?;
                self.outputs.push(name.to_string());
            }
            None if primary => {
                std::io::stdout()
                    .write_all(text.as_bytes())
                    .map_err(|e| CliError::Io(e.to_string()))?;
            }
            None => eprint!("{text}"),
        }
        Ok(())
    }

    /// Writes `manifest.json` next to the outputs (only with `--out`).
    pub fn finish(self) -> Result<(), CliError> {
        let Some(d) = &self.dir else {
            return Ok(());
        };
        let manifest = json!({
            "command": self.command,
            "version": env!("CARGO_PKG_VERSION"),
            "problem_sha256": self.problem_sha256,
            "config": self.config,
            "outputs": self.outputs,
            "tolerances": self.tolerances,
        });
        let path = d.join("manifest.json");
        let text = serde_json::to_string_pretty(&manifest).expect("JSON values serialize") + "\n";
        fs::write(&path, text).map_err(|e| io_err(&path, e))
    }
}

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}
