//! Constructive witnesses for the hemicontinuity arguments: the convex
//! interpolation step and the transport of a near-optimal fiber element.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauge::{PsiInstance, Selection};
use crate::geometry::{dot, norm_eval, NormSpec, Tolerance, Vector};

const MAX_HALVINGS: usize = 200;

/// A polyhedron `{z : a·z = b for equalities, a·z ≤ b for inequalities}`
/// in a normed space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSet {
    pub dim: usize,
    pub norm: NormSpec,
    #[serde(default)]
    pub equalities: Vec<(Vector, f64)>,
    #[serde(default)]
    pub inequalities: Vec<(Vector, f64)>,
}

impl LpSet {
    pub fn contains(&self, p: &Vector, tol: &Tolerance) -> bool {
        let slack = |a: &Vector| tol.mem_tol * (1.0 + a.max_abs() * p.max_abs());
        self.equalities
            .iter()
            .all(|(a, b)| (dot(a.as_slice(), p.as_slice()) - b).abs() <= slack(a))
            && self
                .inequalities
                .iter()
                .all(|(a, b)| dot(a.as_slice(), p.as_slice()) - b <= slack(a))
    }
}

/// Convex sets the interpolation step can work in.
#[derive(Debug, Clone)]
pub enum ConvexSet<'a> {
    Polyhedron(LpSet),
    /// The fiber `φ(query)` of an instance, normed by `⟦·⟧`.
    Fiber {
        inst: &'a PsiInstance,
        query: Vector,
    },
}

impl ConvexSet<'_> {
    fn dim(&self) -> usize {
        match self {
            ConvexSet::Polyhedron(s) => s.dim,
            ConvexSet::Fiber { inst, .. } => inst.fiber_dim(),
        }
    }

    pub fn norm_of(&self, p: &Vector) -> Result<f64> {
        match self {
            ConvexSet::Polyhedron(s) => norm_eval(&s.norm, p),
            ConvexSet::Fiber { inst, .. } => inst.fiber_norm(p),
        }
    }

    pub fn contains(&self, p: &Vector, tol: &Tolerance) -> Result<bool> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: p.dim(),
            });
        }
        match self {
            ConvexSet::Polyhedron(s) => Ok(s.contains(p, tol)),
            ConvexSet::Fiber { inst, query } => inst.in_fiber(query, p, tol),
        }
    }
}

/// Open ball `{p : ‖p − center‖ < radius}` in the norm of the ambient set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpenBall {
    pub center: Vector,
    pub radius: f64,
}

impl OpenBall {
    pub fn contains(&self, set: &ConvexSet<'_>, p: &Vector) -> Result<bool> {
        Ok(set.norm_of(&(p - &self.center))? < self.radius)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InterpolationWitness {
    /// Weight on `y`; zero when `x` already satisfies the strict bound.
    pub t0: f64,
    pub point: Vector,
    pub norm: f64,
    pub bound: f64,
    pub halvings: usize,
}

/// Given `x, y ∈ G` with `‖x‖ ≤ α + ε₀`, `‖y‖ ≤ α + ε₀/2` and `x ∈ U` open,
/// finds `t₀ ∈ [0, 1]` such that `x_{t₀} = t₀ y + (1 − t₀) x` lies in
/// `U ∩ G` with `‖x_{t₀}‖ < α + ε₀`.
pub fn interpolation_witness(
    set: &ConvexSet<'_>,
    alpha: f64,
    eps0: f64,
    u: &OpenBall,
    x: &Vector,
    y: &Vector,
    tol: &Tolerance,
) -> Result<InterpolationWitness> {
    if !(alpha.is_finite() && alpha >= 0.0) {
        return Err(Error::Precondition(format!("alpha must be finite and non-negative, got {alpha}")));
    }
    if !(eps0.is_finite() && eps0 > 0.0) {
        return Err(Error::Precondition(format!("eps0 must be positive, got {eps0}")));
    }
    if !(u.radius.is_finite() && u.radius > 0.0) {
        return Err(Error::Precondition("open set must have positive radius".into()));
    }
    if u.center.dim() != set.dim() {
        return Err(Error::DimensionMismatch {
            expected: set.dim(),
            found: u.center.dim(),
        });
    }
    let bound = alpha + eps0;
    let nx = set.norm_of(x)?;
    let ny = set.norm_of(y)?;
    let slack = tol.mem_tol * (1.0 + bound);
    if !set.contains(x, tol)? {
        return Err(Error::Precondition("x is not in the convex set".into()));
    }
    if !set.contains(y, tol)? {
        return Err(Error::Precondition("y is not in the convex set".into()));
    }
    if nx > bound + slack {
        return Err(Error::Precondition(format!("‖x‖ = {nx} exceeds α + ε₀ = {bound}")));
    }
    if ny > alpha + eps0 / 2.0 + slack {
        return Err(Error::Precondition(format!(
            "‖y‖ = {ny} exceeds α + ε₀/2 = {}",
            alpha + eps0 / 2.0
        )));
    }
    if !u.contains(set, x)? {
        return Err(Error::Precondition("x is not in the open set".into()));
    }
    let strict = bound - tol.feas_tol;
    if nx < strict {
        return Ok(InterpolationWitness {
            t0: 0.0,
            point: x.clone(),
            norm: nx,
            bound,
            halvings: 0,
        });
    }
    let mut t = 1.0_f64;
    for halvings in 0..MAX_HALVINGS {
        let p = &y.scale(t) + &x.scale(1.0 - t);
        let np = set.norm_of(&p)?;
        if np < strict && u.contains(set, &p)? && set.contains(&p, tol)? {
            return Ok(InterpolationWitness {
                t0: t,
                point: p,
                norm: np,
                bound,
                halvings,
            });
        }
        t *= 0.5;
    }
    Err(Error::WitnessNotFound(format!(
        "no interpolation point after {MAX_HALVINGS} halvings"
    )))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransportWitness {
    /// Selection at `x`.
    pub y: Selection,
    /// Selection at `z − x`.
    pub v: Selection,
    /// `y + v`, certified to lie in `φ(z)` by the summed coefficients.
    pub combined: Selection,
    pub certificate_residual: f64,
    pub distance: f64,
    /// `(α̂ + ε)·‖z − x‖`.
    pub bound: f64,
}

/// For unit `x, z`, returns `y ∈ φ(x)` and `v ∈ φ(z − x)` from the
/// homogeneous selection, with `y + v ∈ φ(z)` and
/// `⟦v⟧ ≤ (α̂ + ε)‖z − x‖`.
pub fn transport_witness(
    inst: &PsiInstance,
    alpha_hat: f64,
    x: &Vector,
    z: &Vector,
    eps: f64,
    tol: &Tolerance,
) -> Result<TransportWitness> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::Precondition(format!("eps must be positive, got {eps}")));
    }
    for (name, p) in [("x", x), ("z", z)] {
        let n = inst.query_norm(p)?;
        if (n - 1.0).abs() > tol.mem_tol {
            return Err(Error::Precondition(format!("{name} must be a unit point, norm is {n}")));
        }
    }
    let y = inst.select(x, tol)?;
    let diff = z - x;
    let v = inst.select(&diff, tol)?;
    let combined = y.add(&v, inst)?;
    let residual = inst.certificate_residual(z, &combined)?;
    if !inst.certifies(z, &combined, tol)? {
        return Err(Error::WitnessNotFound(format!(
            "y + v fails its fiber certificate by {residual}"
        )));
    }
    let distance = inst.query_norm(&diff)?;
    let bound = (alpha_hat + eps) * distance;
    if v.value > bound + tol.mem_tol * (1.0 + distance) {
        return Err(Error::WitnessNotFound(format!(
            "⟦v⟧ = {} exceeds (α̂ + ε)‖z − x‖ = {bound}",
            v.value
        )));
    }
    Ok(TransportWitness {
        y,
        v,
        combined,
        certificate_residual: residual,
        distance,
        bound,
    })
}
