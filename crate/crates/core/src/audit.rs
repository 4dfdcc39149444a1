//! Numerical audits of the homogeneous selections: a continuity audit on a
//! sphere mesh and a seeded difference-quotient probe.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alpha::AlphaMode;
use crate::error::{Error, Result};
use crate::gauge::{PsiForm, PsiInstance, Selection};
use crate::geometry::{sphere_mesh, Tolerance, Vector};

/// Step sizes of the modulus table.
pub const STEPS: [f64; 5] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5];

/// Slack allowed on top of `α̂` in bound checks.
pub const BOUND_SLACK: f64 = 1e-6;

pub const FINITE_DIMENSION_CAVEAT: &str = "Evidence from a finite-dimensional, finite-index \
    instance only. It says nothing about Lipschitz selections for infinite families or \
    infinite-dimensional spaces.";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeshEvaluation {
    pub query: Vector,
    pub selection: Vector,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModulusRow {
    pub step: f64,
    /// `max_i ⟦s(x_i + h t_i) − s(x_i)⟧`.
    pub modulus: f64,
    pub max_quotient: f64,
    /// Whether the modulus shrank relative to the previous, larger step.
    pub decreasing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionReport {
    pub form: PsiForm,
    pub mesh_size: usize,
    pub seed: u64,
    pub alpha_hat: f64,
    pub max_reconstruction_error: f64,
    /// `max(0, ⟦s(x)⟧ − (α̂ + slack)‖x‖)` over the mesh.
    pub max_bound_violation: f64,
    pub modulus: Vec<ModulusRow>,
    /// Largest difference quotient from each mesh point to its neighbours.
    pub local_lipschitz: Vec<f64>,
    pub max_local_lipschitz: f64,
    pub flags: Vec<String>,
    pub evaluations: Vec<MeshEvaluation>,
}

impl PsiInstance {
    /// Unit points of the codomain used as an audit mesh.
    pub fn mesh(&self, size: usize, seed: u64) -> Result<Vec<Vector>> {
        match self.form {
            PsiForm::Delta => sphere_mesh(&self.norm, self.family.dim, size, seed),
            PsiForm::Upsilon => self.unit_queries(AlphaMode::SampledLowerBound, size, seed),
        }
    }
}

fn select_all(inst: &PsiInstance, queries: &[Vector], tol: &Tolerance) -> Result<Vec<Selection>> {
    let out: Vec<Result<Selection>> = queries.par_iter().map(|q| inst.select(q, tol)).collect();
    out.into_iter().collect()
}

fn nearest(inst: &PsiInstance, mesh: &[Vector], i: usize, k: usize) -> Result<Vec<usize>> {
    let mut d: Vec<(f64, usize)> = Vec::with_capacity(mesh.len());
    for (j, p) in mesh.iter().enumerate() {
        if j != i {
            d.push((inst.query_norm(&(p - &mesh[i]))?, j));
        }
    }
    d.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    Ok(d.into_iter().filter(|e| e.0 > 0.0).take(k).map(|e| e.1).collect())
}

/// Evaluates the selection on `mesh_size` unit points and records the
/// continuity modulus along the direction to the nearest mesh point, local
/// Lipschitz estimates and the bound `⟦s(x)⟧ ≤ α̂‖x‖`. When `alpha_hat` is
/// absent it is computed exactly for polyhedral norms and taken as the mesh
/// maximum otherwise.
pub fn continuity_audit(
    inst: &PsiInstance,
    mesh_size: usize,
    seed: u64,
    alpha_hat: Option<f64>,
    tol: &Tolerance,
) -> Result<SelectionReport> {
    if mesh_size == 0 {
        return Err(Error::Input("mesh size must be positive".into()));
    }
    let mesh = inst.mesh(mesh_size, seed)?;
    let base = select_all(inst, &mesh, tol)?;
    let alpha_hat = match alpha_hat {
        Some(a) => a,
        None if inst.norm.is_polyhedral() => {
            inst.alpha(AlphaMode::ExactVertex, 0, seed, tol)?.alpha
        }
        None => base.iter().map(|s| s.value).fold(0.0, f64::max),
    };

    let mut max_reconstruction_error = 0.0_f64;
    let mut max_bound_violation = 0.0_f64;
    for (q, s) in mesh.iter().zip(&base) {
        max_reconstruction_error = max_reconstruction_error.max(inst.certificate_residual(q, s)?);
        let n = inst.query_norm(q)?;
        max_bound_violation = max_bound_violation.max(s.value - (alpha_hat + BOUND_SLACK) * n);
    }

    let mut neighbours = Vec::with_capacity(mesh.len());
    for i in 0..mesh.len() {
        neighbours.push(nearest(inst, &mesh, i, 2)?);
    }

    let mut local_lipschitz = Vec::with_capacity(mesh.len());
    for (i, nb) in neighbours.iter().enumerate() {
        let mut best = 0.0_f64;
        for &j in nb {
            let num = inst.fiber_norm(&(&base[i].point - &base[j].point))?;
            let den = inst.query_norm(&(&mesh[i] - &mesh[j]))?;
            best = best.max(num / den);
        }
        local_lipschitz.push(best);
    }
    let max_local_lipschitz = local_lipschitz.iter().copied().fold(0.0, f64::max);

    let mut directions = Vec::with_capacity(mesh.len());
    for (i, nb) in neighbours.iter().enumerate() {
        directions.push(match nb.first() {
            Some(&j) => {
                let d = &mesh[j] - &mesh[i];
                let n = inst.query_norm(&d)?;
                Some(d.scale(1.0 / n))
            }
            None => None,
        });
    }

    let mut flags = Vec::new();
    let mut modulus = Vec::with_capacity(STEPS.len());
    let mut previous: Option<f64> = None;
    for h in STEPS {
        let idx: Vec<usize> = (0..mesh.len()).filter(|&i| directions[i].is_some()).collect();
        let moved: Vec<Vector> = idx
            .iter()
            .map(|&i| &mesh[i] + &directions[i].as_ref().expect("filtered").scale(h))
            .collect();
        let sel = select_all(inst, &moved, tol)?;
        let mut m = 0.0_f64;
        for (k, &i) in idx.iter().enumerate() {
            m = m.max(inst.fiber_norm(&(&sel[k].point - &base[i].point))?);
        }
        let decreasing = match previous {
            Some(p) => m < p || m <= 1e-12,
            None => true,
        };
        if !decreasing {
            flags.push(format!("modulus did not decrease at step {h:e}: {m:e}"));
        }
        previous = Some(m);
        modulus.push(ModulusRow {
            step: h,
            modulus: m,
            max_quotient: m / h,
            decreasing,
        });
    }
    if max_bound_violation > 0.0 {
        flags.push(format!("bound exceeded by {max_bound_violation:e}"));
    }
    if max_reconstruction_error > tol.mem_tol {
        flags.push(format!("certificate residual {max_reconstruction_error:e}"));
    }

    let evaluations = mesh
        .into_iter()
        .zip(base)
        .map(|(query, s)| MeshEvaluation {
            query,
            selection: s.point,
            value: s.value,
        })
        .collect();
    Ok(SelectionReport {
        form: inst.form,
        mesh_size,
        seed,
        alpha_hat,
        max_reconstruction_error,
        max_bound_violation: max_bound_violation.max(0.0),
        modulus,
        local_lipschitz,
        max_local_lipschitz,
        flags,
        evaluations,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientStats {
    pub min: f64,
    pub median: f64,
    pub p90: f64,
    pub p99: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub form: PsiForm,
    pub trials: usize,
    pub seed: u64,
    pub stats: Option<QuotientStats>,
    /// Pair attaining the largest quotient.
    pub worst_pair: Option<(Vector, Vector)>,
    pub known_constant: Option<f64>,
    /// Present only when a known constant was supplied.
    pub verdict: Option<bool>,
    pub quotients: Vec<f64>,
    pub caveat: String,
}

/// Difference quotients `⟦s(x) − s(z)⟧ / ‖x − z‖` of the selection over
/// `trials` seeded pairs of unit points. Half of the pairs are close, at a
/// log-uniform distance between `1e-4` and `1`.
pub fn lipschitz_probe(
    inst: &PsiInstance,
    trials: usize,
    seed: u64,
    known_constant: Option<f64>,
    tol: &Tolerance,
) -> Result<ProbeReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::with_capacity(trials);
    for k in 0..trials {
        let x = inst.random_unit_query(&mut rng)?;
        let z = if k % 2 == 0 {
            inst.random_unit_query(&mut rng)?
        } else {
            let r = 10f64.powf(rng.random_range(-4.0..0.0));
            let d = inst.random_unit_query(&mut rng)?;
            let p = &x + &d.scale(r);
            let n = inst.query_norm(&p)?;
            if n > 0.0 {
                p.scale(1.0 / n)
            } else {
                d
            }
        };
        pairs.push((x, z));
    }
    let quotients: Vec<Result<f64>> = pairs
        .par_iter()
        .map(|(x, z)| {
            let den = inst.query_norm(&(x - z))?;
            if den == 0.0 {
                return Ok(0.0);
            }
            let sx = inst.select(x, tol)?;
            let sz = inst.select(z, tol)?;
            Ok(inst.fiber_norm(&(&sx.point - &sz.point))? / den)
        })
        .collect();
    let quotients: Vec<f64> = quotients.into_iter().collect::<Result<_>>()?;

    let (stats, worst_pair) = if quotients.is_empty() {
        (None, None)
    } else {
        let mut sorted = quotients.clone();
        sorted.sort_by(f64::total_cmp);
        let at = |p: f64| sorted[((sorted.len() - 1) as f64 * p).round() as usize];
        let mut worst = 0;
        for (i, &q) in quotients.iter().enumerate() {
            if q > quotients[worst] {
                worst = i;
            }
        }
        (
            Some(QuotientStats {
                min: sorted[0],
                median: at(0.5),
                p90: at(0.9),
                p99: at(0.99),
                max: sorted[sorted.len() - 1],
            }),
            Some(pairs[worst].clone()),
        )
    };
    let verdict = match (known_constant, &stats) {
        (Some(c), Some(s)) => Some(s.max <= c + BOUND_SLACK),
        _ => None,
    };
    Ok(ProbeReport {
        form: inst.form,
        trials,
        seed,
        stats,
        worst_pair,
        known_constant,
        verdict,
        quotients,
        caveat: FINITE_DIMENSION_CAVEAT.to_string(),
    })
}
