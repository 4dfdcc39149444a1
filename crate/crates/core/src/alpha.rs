//! Worst-case ratio sweeps shared by the conormality and coadditivity
//! constants.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::Vector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AlphaMode {
    /// Maximum over the vertices of a polyhedral unit ball. Exact, because the
    /// optimal-value function is convex and positively homogeneous.
    ExactVertex,
    /// Maximum over sampled unit points; a lower bound.
    SampledLowerBound,
}

impl AlphaMode {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "exact" | "exact-vertex" | "EXACT_VERTEX" => Some(AlphaMode::ExactVertex),
            "sample" | "sampled" | "SAMPLED_LOWER_BOUND" => Some(AlphaMode::SampledLowerBound),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaResult {
    pub alpha: f64,
    pub mode: AlphaMode,
    /// Unit point attaining `alpha`: one vector for decompositions, one per
    /// cone for translation tuples.
    pub witness: Vec<Vector>,
    /// Number of unit points evaluated.
    pub samples: usize,
}

/// Evaluates `f` on every point and returns the first maximizer.
/// Evaluation may run in parallel; the result does not depend on scheduling.
pub(crate) fn sweep_max<P, F>(points: &[P], f: F) -> Result<(usize, f64)>
where
    P: Sync,
    F: Fn(&P) -> Result<f64> + Sync,
{
    // collect in order so the reported error, like the maximizer, is the first one
    let values: Vec<Result<f64>> = points.par_iter().map(&f).collect();
    let values: Vec<f64> = values.into_iter().collect::<Result<Vec<_>>>()?;
    let mut best = (0, f64::NEG_INFINITY);
    for (i, &v) in values.iter().enumerate() {
        if v > best.1 {
            best = (i, v);
        }
    }
    Ok(best)
}
