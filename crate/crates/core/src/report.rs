//! Run reports and their JSON and CSV encodings.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Tolerance;
use crate::problem::digest_bytes;

pub const TOOLKIT: &str = concat!(env!("CARGO_PKG_NAME"), " ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::Input(format!("unknown format '{other}', expected json or csv"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RunStatus {
    Ok,
    Negative,
    Error,
}

/// Parameters in force for the run, always echoed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    pub mode: String,
    pub samples: usize,
    pub seed: u64,
    pub tolerance: Tolerance,
}

/// One named number of the report, optionally with the unit point or
/// tuple that attains it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub name: String,
    pub value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<f64>,
}

impl Quantity {
    pub fn new(name: impl Into<String>, value: f64) -> Self {
        Quantity {
            name: name.into(),
            value,
            mode: None,
            witness: Vec::new(),
        }
    }

    pub fn with_mode(mut self, mode: impl Into<String>) -> Self {
        self.mode = Some(mode.into());
        self
    }

    pub fn with_witness(mut self, w: Vec<f64>) -> Self {
        self.witness = w;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

/// Output of one CLI command. Field order is the serialized key order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub toolkit: String,
    pub command: Vec<String>,
    pub input_digest: String,
    pub parameters: Parameters,
    pub status: RunStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<bool>,
    pub quantities: Vec<Quantity>,
    /// Certificates backing the verdict, re-validated before emission.
    pub certificates: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    /// The only field that varies between identical runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl RunReport {
    /// SHA-256 of the JSON encoding without the timing block.
    pub fn content_digest(&self) -> Result<String> {
        let mut r = self.clone();
        r.timing = None;
        let text = serde_json::to_vec(&r).map_err(|e| Error::Input(e.to_string()))?;
        Ok(digest_bytes(&text))
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::Input(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_csv(&self) -> String {
        let width = self.quantities.iter().map(|q| q.witness.len()).max().unwrap_or(0);
        let mut out = String::from("quantity,value,mode");
        for i in 0..width {
            out.push_str(&format!(",witness_{i}"));
        }
        out.push('\n');
        for q in &self.quantities {
            out.push_str(&csv_field(&q.name));
            out.push(',');
            out.push_str(&fmt17(q.value));
            out.push(',');
            out.push_str(q.mode.as_deref().unwrap_or(""));
            for i in 0..width {
                out.push(',');
                if let Some(w) = q.witness.get(i) {
                    out.push_str(&fmt17(*w));
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => Ok(self.to_csv()),
        }
    }
}

/// 17 significant digits.
pub fn fmt17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Writes the report to `out`, or to stdout when absent.
pub fn emit_report(report: &RunReport, format: Format, out: Option<&Path>) -> Result<()> {
    let text = report.render(format)?;
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Error::Input(format!("cannot write to stdout: {e}")))
        }
    }
}
