//! Problem files: a cone family, a norm and optional translation tuples and
//! analysis parameters, stored as JSON.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cones::{ConeFamily, PolyhedralCone};
use crate::error::{Error, Result};
use crate::geometry::{NormSpec, Tolerance, Vector};
use crate::intersection::TranslationTuple;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeSpec {
    pub label: String,
    pub generators: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feas_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mem_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap_tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub schema_version: u32,
    pub dimension: usize,
    pub norm: NormSpec,
    pub cones: Vec<ConeSpec>,
    /// Each tuple holds one translation vector per cone.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub translations: Vec<Vec<Vec<f64>>>,
    #[serde(default)]
    pub analysis: AnalysisParams,
}

/// A validated problem file.
#[derive(Debug, Clone)]
pub struct Problem {
    pub file: ProblemFile,
    pub family: ConeFamily,
    pub norm: NormSpec,
    pub translations: Vec<TranslationTuple>,
    /// Hex SHA-256 of the file contents.
    pub digest: String,
}

impl ProblemFile {
    pub fn from_family(family: &ConeFamily, norm: &NormSpec) -> Self {
        ProblemFile {
            schema_version: SCHEMA_VERSION,
            dimension: family.dim,
            norm: norm.clone(),
            cones: family
                .cones
                .iter()
                .map(|c| ConeSpec {
                    label: c.label.clone(),
                    generators: c.generators.iter().map(|g| g.as_slice().to_vec()).collect(),
                })
                .collect(),
            translations: Vec::new(),
            analysis: AnalysisParams::default(),
        }
    }

    pub fn validate(self, digest: String) -> Result<Problem> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Input(format!(
                "field schema_version: unsupported version {}, expected {SCHEMA_VERSION}",
                self.schema_version
            )));
        }
        if self.cones.is_empty() {
            return Err(Error::Input("at least one cone required".into()));
        }
        let mut cones = Vec::with_capacity(self.cones.len());
        for spec in &self.cones {
            let mut gens = Vec::with_capacity(spec.generators.len());
            for (k, g) in spec.generators.iter().enumerate() {
                if g.len() != self.dimension {
                    return Err(Error::Input(format!(
                        "cone '{}': generator {k} has dimension {}, expected {}",
                        spec.label,
                        g.len(),
                        self.dimension
                    )));
                }
                gens.push(
                    Vector::new(g.clone())
                        .map_err(|e| Error::Input(format!("cone '{}': generator {k}: {e}", spec.label)))?,
                );
            }
            cones.push(PolyhedralCone::new(spec.label.clone(), gens)?);
        }
        let family = ConeFamily::new(self.dimension, cones)?;
        self.norm
            .validate(self.dimension)
            .map_err(|e| Error::Input(format!("field norm: {e}")))?;
        let mut translations = Vec::with_capacity(self.translations.len());
        for (t, tuple) in self.translations.iter().enumerate() {
            translations.push(parse_tuple(&family, tuple).map_err(|e| {
                Error::Input(format!("field translations[{t}]: {e}"))
            })?);
        }
        self.tolerance()?;
        Ok(Problem {
            norm: self.norm.clone(),
            family,
            translations,
            digest,
            file: self,
        })
    }

    /// Tolerances from the analysis block, defaults elsewhere.
    pub fn tolerance(&self) -> Result<Tolerance> {
        let d = Tolerance::default();
        let t = Tolerance {
            feas_tol: self.analysis.feas_tol.unwrap_or(d.feas_tol),
            mem_tol: self.analysis.mem_tol.unwrap_or(d.mem_tol),
            gap_tol: self.analysis.gap_tol.unwrap_or(d.gap_tol),
        };
        t.validate()?;
        Ok(t)
    }
}

fn parse_tuple(family: &ConeFamily, tuple: &[Vec<f64>]) -> Result<TranslationTuple> {
    if tuple.len() != family.len() {
        return Err(Error::Input(format!(
            "expected {} translation vectors, found {}",
            family.len(),
            tuple.len()
        )));
    }
    let mut xi = Vec::with_capacity(tuple.len());
    for (v, cone) in tuple.iter().zip(&family.cones) {
        if v.len() != family.dim {
            return Err(Error::Input(format!(
                "translation for cone '{}' has dimension {}, expected {}",
                cone.label,
                v.len(),
                family.dim
            )));
        }
        xi.push(Vector::new(v.clone())?);
    }
    TranslationTuple::new(xi)
}

pub fn digest_bytes(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Parses problem JSON; syntax errors carry line and column.
pub fn parse_problem_str(text: &str) -> Result<Problem> {
    let file: ProblemFile = serde_json::from_str(text).map_err(|e| {
        Error::Input(format!("line {}, column {}: {e}", e.line(), e.column()))
    })?;
    file.validate(digest_bytes(text.as_bytes()))
}

pub fn parse_problem(path: &Path) -> Result<Problem> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_problem_str(&text).map_err(|e| match e {
        Error::Input(m) => Error::Input(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// Parses `"a,b;c,d"` into one vector per `;`-separated group.
pub fn parse_vectors(text: &str) -> Result<Vec<Vector>> {
    text.split(';')
        .map(|group| {
            let entries = group
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Input(format!("not a number: '{}'", s.trim())))
                })
                .collect::<Result<Vec<f64>>>()?;
            Vector::new(entries)
        })
        .collect()
}

pub fn parse_point(text: &str) -> Result<Vector> {
    let mut v = parse_vectors(text)?;
    if v.len() != 1 {
        return Err(Error::Input("expected a single comma-separated point".into()));
    }
    Ok(v.remove(0))
}

pub fn parse_translation(family: &ConeFamily, text: &str) -> Result<TranslationTuple> {
    let vs = parse_vectors(text)?;
    let raw: Vec<Vec<f64>> = vs.into_iter().map(Vector::into_inner).collect();
    parse_tuple(family, &raw)
}
