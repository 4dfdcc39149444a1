//! Vectors, norms on `R^n` and the tolerance policy shared by every solver.

use std::f64::consts::PI;
use std::ops::{Add, Index, Mul, Neg, Sub};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{solve_lp, LinearProgram, LpStatus};

/// A finite-dimensional real vector with finite entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Input("vector must have at least one entry".into()));
        }
        if let Some(bad) = entries.iter().find(|v| !v.is_finite()) {
            return Err(Error::Input(format!("non-finite vector entry {bad}")));
        }
        Ok(Vector(entries))
    }

    /// Builds a vector without the finiteness check. Used on values produced
    /// by arithmetic on already-validated vectors.
    pub(crate) fn from_raw(entries: Vec<f64>) -> Self {
        debug_assert!(entries.iter().all(|v| v.is_finite()));
        Vector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![0.0; dim])
    }

    /// `sign · e_index`.
    pub fn basis(dim: usize, index: usize, sign: f64) -> Self {
        let mut v = vec![0.0; dim];
        v[index] = sign;
        Vector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.0.iter()
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        dot(&self.0, &other.0)
    }

    pub fn scale(&self, factor: f64) -> Vector {
        Vector(self.0.iter().map(|v| v * factor).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

impl TryFrom<Vec<f64>> for Vector {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        Vector::new(v)
    }
}

impl From<Vector> for Vec<f64> {
    fn from(v: Vector) -> Self {
        v.0
    }
}

impl Index<usize> for Vector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;

    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;

    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimension mismatch");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul<f64> for &Vector {
    type Output = Vector;

    fn mul(self, rhs: f64) -> Vector {
        self.scale(rhs)
    }
}

impl Neg for &Vector {
    type Output = Vector;

    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|v| -v).collect())
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Numerical tolerances.
///
/// `feas_tol` governs LP feasibility decisions, `mem_tol` the re-validation
/// of certificates and reports, `gap_tol` the stopping rule of the Euclidean
/// cutting-plane loop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub feas_tol: f64,
    pub mem_tol: f64,
    pub gap_tol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            feas_tol: 1e-9,
            mem_tol: 1e-7,
            gap_tol: 1e-7,
        }
    }
}

impl Tolerance {
    pub fn validate(&self) -> Result<()> {
        let all = [self.feas_tol, self.mem_tol, self.gap_tol];
        if all.iter().any(|t| !(t.is_finite() && *t > 0.0)) {
            return Err(Error::Input(format!(
                "tolerances must be finite and strictly positive, got {self:?}"
            )));
        }
        if self.feas_tol > self.mem_tol {
            return Err(Error::Input(format!(
                "feas_tol ({}) must not exceed mem_tol ({})",
                self.feas_tol, self.mem_tol
            )));
        }
        Ok(())
    }
}

/// A norm on `R^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum NormSpec {
    /// `Σ w_i |x_i|`.
    L1 {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        weights: Option<Vec<f64>>,
    },
    L2,
    /// `max_i w_i |x_i|`.
    Linf {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        weights: Option<Vec<f64>>,
    },
    /// Gauge of the convex hull of a centrally symmetric, full-dimensional
    /// vertex set.
    Polyhedral { ball_vertices: Vec<Vector> },
}

impl NormSpec {
    pub fn l1() -> Self {
        NormSpec::L1 { weights: None }
    }

    pub fn l2() -> Self {
        NormSpec::L2
    }

    pub fn linf() -> Self {
        NormSpec::Linf { weights: None }
    }

    /// Validated polyhedral norm.
    pub fn polyhedral(ball_vertices: Vec<Vector>) -> Result<Self> {
        let dim = ball_vertices
            .first()
            .map(Vector::dim)
            .ok_or_else(|| Error::Input("polyhedral norm needs ball vertices".into()))?;
        let norm = NormSpec::Polyhedral { ball_vertices };
        norm.validate(dim)?;
        Ok(norm)
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            NormSpec::L1 { .. } => "l1",
            NormSpec::L2 => "l2",
            NormSpec::Linf { .. } => "linf",
            NormSpec::Polyhedral { .. } => "polyhedral",
        }
    }

    pub fn is_polyhedral(&self) -> bool {
        !matches!(self, NormSpec::L2)
    }

    /// Dimension fixed by the norm data, if any.
    pub fn fixed_dim(&self) -> Option<usize> {
        match self {
            NormSpec::L1 { weights } | NormSpec::Linf { weights } => {
                weights.as_ref().map(Vec::len)
            }
            NormSpec::L2 => None,
            NormSpec::Polyhedral { ball_vertices } => ball_vertices.first().map(Vector::dim),
        }
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        if dim == 0 {
            return Err(Error::Input("dimension must be positive".into()));
        }
        if let Some(d) = self.fixed_dim() {
            if d != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: d,
                });
            }
        }
        match self {
            NormSpec::L1 { weights } | NormSpec::Linf { weights } => {
                if let Some(w) = weights {
                    if w.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
                        return Err(Error::Input("norm weights must be strictly positive".into()));
                    }
                }
            }
            NormSpec::L2 => {}
            NormSpec::Polyhedral { ball_vertices } => {
                for v in ball_vertices {
                    if v.dim() != dim {
                        return Err(Error::DimensionMismatch {
                            expected: dim,
                            found: v.dim(),
                        });
                    }
                    if v.is_zero() {
                        return Err(Error::Input("ball vertex must be non-zero".into()));
                    }
                }
                for v in ball_vertices {
                    let neg = -v;
                    let has_mirror = ball_vertices
                        .iter()
                        .any(|w| (w - &neg).max_abs() <= 1e-12 * (1.0 + v.max_abs()));
                    if !has_mirror {
                        return Err(Error::Input(format!(
                            "ball vertices are not centrally symmetric: missing -{:?}",
                            v.as_slice()
                        )));
                    }
                }
                if rank(ball_vertices, dim) < dim {
                    return Err(Error::Input(
                        "ball vertices span a proper subspace; the gauge is not a norm".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn weight(&self, i: usize) -> f64 {
        match self {
            NormSpec::L1 { weights: Some(w) } | NormSpec::Linf { weights: Some(w) } => w[i],
            _ => 1.0,
        }
    }
}

fn rank(vectors: &[Vector], dim: usize) -> usize {
    let mut rows: Vec<Vec<f64>> = vectors.iter().map(|v| v.as_slice().to_vec()).collect();
    let scale = rows
        .iter()
        .flatten()
        .fold(0.0_f64, |m, v| m.max(v.abs()))
        .max(1.0);
    let mut r = 0;
    for col in 0..dim {
        let Some(p) = (r..rows.len()).max_by(|&a, &b| {
            rows[a][col]
                .abs()
                .partial_cmp(&rows[b][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        }) else {
            break;
        };
        if rows[p][col].abs() <= 1e-12 * scale {
            continue;
        }
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r {
                let f = rows[i][col] / rows[r][col];
                for j in col..dim {
                    let sub = f * rows[r][j];
                    rows[i][j] -= sub;
                }
            }
        }
        r += 1;
    }
    r
}

/// `‖x‖` under `norm`.
pub fn norm_eval(norm: &NormSpec, x: &Vector) -> Result<f64> {
    if let Some(d) = norm.fixed_dim() {
        if d != x.dim() {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: x.dim(),
            });
        }
    }
    let value = match norm {
        NormSpec::L1 { .. } => x
            .iter()
            .enumerate()
            .map(|(i, v)| norm.weight(i) * v.abs())
            .sum(),
        NormSpec::L2 => x.iter().map(|v| v * v).sum::<f64>().sqrt(),
        NormSpec::Linf { .. } => x
            .iter()
            .enumerate()
            .fold(0.0, |m, (i, v)| f64::max(m, norm.weight(i) * v.abs())),
        NormSpec::Polyhedral { ball_vertices } => polyhedral_gauge(ball_vertices, x)?,
    };
    Ok(value)
}

/// `min { Σ μ_j : Σ μ_j v_j = x, μ ≥ 0 }`, the gauge of `conv(vertices)`.
fn polyhedral_gauge(vertices: &[Vector], x: &Vector) -> Result<f64> {
    if x.is_zero() {
        return Ok(0.0);
    }
    let k = vertices.len();
    let equalities = (0..x.dim())
        .map(|i| (vertices.iter().map(|v| v[i]).collect(), x[i]))
        .collect();
    let lp = LinearProgram::new(vec![1.0; k], equalities, vec![true; k])?;
    let out = solve_lp(&lp, &Tolerance::default())?;
    match out.status {
        LpStatus::Optimal => Ok(out.value.unwrap_or(0.0).max(0.0)),
        _ => Err(Error::Solver(format!(
            "polyhedral gauge LP ended with status {:?}; ball vertices do not span",
            out.status
        ))),
    }
}

/// Extreme points of the closed unit ball of a polyhedral norm.
pub fn ball_vertices(norm: &NormSpec, dim: usize) -> Result<Vec<Vector>> {
    norm.validate(dim)?;
    match norm {
        NormSpec::L2 => Err(Error::NotPolyhedral),
        NormSpec::L1 { .. } => {
            let mut out = Vec::with_capacity(2 * dim);
            for i in 0..dim {
                let w = norm.weight(i);
                out.push(Vector::basis(dim, i, 1.0 / w));
                out.push(Vector::basis(dim, i, -1.0 / w));
            }
            Ok(out)
        }
        NormSpec::Linf { .. } => {
            if dim > 20 {
                return Err(Error::Input(format!(
                    "linf ball in dimension {dim} has too many vertices to enumerate"
                )));
            }
            // Sign patterns in binary order, bit i set meaning coordinate i is negative.
            Ok((0..(1usize << dim))
                .map(|mask| {
                    Vector::from_raw(
                        (0..dim)
                            .map(|i| {
                                let s = if mask >> i & 1 == 1 { -1.0 } else { 1.0 };
                                s / norm.weight(i)
                            })
                            .collect(),
                    )
                })
                .collect())
        }
        NormSpec::Polyhedral { ball_vertices } => {
            let mut out = Vec::new();
            for (j, v) in ball_vertices.iter().enumerate() {
                let duplicate = ball_vertices[..j].iter().any(|w| w == v);
                if !duplicate && is_extreme(ball_vertices, j)? {
                    out.push(v.clone());
                }
            }
            Ok(out)
        }
    }
}

/// Whether `vertices[j]` is not a convex combination of the other vertices.
fn is_extreme(vertices: &[Vector], j: usize) -> Result<bool> {
    let target = &vertices[j];
    let others: Vec<&Vector> = vertices
        .iter()
        .enumerate()
        .filter(|(i, v)| *i != j && *v != target)
        .map(|(_, v)| v)
        .collect();
    if others.is_empty() {
        return Ok(true);
    }
    let k = others.len();
    let mut equalities: Vec<(Vec<f64>, f64)> = (0..target.dim())
        .map(|i| (others.iter().map(|v| v[i]).collect(), target[i]))
        .collect();
    equalities.push((vec![1.0; k], 1.0));
    let lp = LinearProgram::new(vec![0.0; k], equalities, vec![true; k])?;
    let out = solve_lp(&lp, &Tolerance::default())?;
    Ok(out.status != LpStatus::Optimal)
}

/// `count` points on the unit sphere of `norm`.
///
/// In dimension 2 this is the uniform angular grid `θ_k = 2πk/count`
/// (the seed is ignored); in higher dimension seeded Gaussian directions.
pub fn sphere_mesh(norm: &NormSpec, dim: usize, count: usize, seed: u64) -> Result<Vec<Vector>> {
    if count == 0 {
        return Err(Error::Input("sphere mesh needs at least one point".into()));
    }
    norm.validate(dim)?;
    let raw: Vec<Vec<f64>> = match dim {
        1 => (0..count)
            .map(|k| vec![if k % 2 == 0 { 1.0 } else { -1.0 }])
            .collect(),
        2 => (0..count)
            .map(|k| {
                let theta = 2.0 * PI * (k as f64) / (count as f64);
                let (s, c) = theta.sin_cos();
                vec![snap(c), snap(s)]
            })
            .collect(),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count).map(|_| random_direction(&mut rng, dim)).collect()
        }
    };
    raw.into_iter()
        .map(|v| {
            let v = Vector::from_raw(v);
            let n = norm_eval(norm, &v)?;
            Ok(v.scale(1.0 / n))
        })
        .collect()
}

/// Rounds grid cosines like `cos(π/2) ≈ 6e-17` to exact zero.
fn snap(v: f64) -> f64 {
    if v.abs() < 1e-15 {
        0.0
    } else {
        v
    }
}

/// A non-zero Gaussian direction.
pub(crate) fn random_direction(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(rng)).collect();
        if v.iter().any(|x: &f64| x.abs() > 1e-12) {
            return v;
        }
    }
}

/// Seeded point on the unit sphere of `norm`, independent of the grid rule.
pub(crate) fn random_unit(norm: &NormSpec, rng: &mut ChaCha8Rng, dim: usize) -> Result<Vector> {
    let v = Vector::from_raw(random_direction(rng, dim));
    let n = norm_eval(norm, &v)?;
    Ok(v.scale(1.0 / n))
}
