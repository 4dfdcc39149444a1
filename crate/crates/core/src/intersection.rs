//! Intersections of translated cones `⋂_ω (ξ_ω + C_ω)`, the coadditivity
//! test and constant, and the homogeneous intersection selection.
//!
//! With finitely many cones the sup-normed product `X^Ω` is the only
//! translation space needed: bounded and convergent tuples coincide.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::alpha::{sweep_max, AlphaMode, AlphaResult};
use crate::cones::{cone_membership, ConeFamily, MembershipCertificate};
use crate::epigraph::{minimize_norms, LinExpr, NormedSolve};
use crate::error::{Error, Result};
use crate::geometry::{ball_vertices, norm_eval, random_unit, NormSpec, Tolerance, Vector};
use crate::lp::{solve_lp, LpBuilder, LpStatus};

/// Upper bound on `|V|^|Ω|` for exact vertex sweeps.
const MAX_VERTEX_TUPLES: usize = 1 << 20;

/// `ξ = (ξ_ω)_ω ∈ X^Ω`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TranslationTuple {
    pub xi: Vec<Vector>,
}

impl TranslationTuple {
    pub fn new(xi: Vec<Vector>) -> Result<Self> {
        let Some(first) = xi.first() else {
            return Err(Error::Input("translation tuple is empty".into()));
        };
        let dim = first.dim();
        if let Some(bad) = xi.iter().find(|v| v.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(TranslationTuple { xi })
    }

    pub fn zeros(family: &ConeFamily) -> Self {
        TranslationTuple {
            xi: family.cones.iter().map(|_| Vector::zeros(family.dim)).collect(),
        }
    }

    /// `max_ω ‖ξ_ω‖`.
    pub fn sup_norm(&self, norm: &NormSpec) -> Result<f64> {
        self.xi
            .iter()
            .try_fold(0.0_f64, |m, v| Ok(m.max(norm_eval(norm, v)?)))
    }

    pub fn is_zero(&self) -> bool {
        self.xi.iter().all(Vector::is_zero)
    }

    pub fn scale(&self, factor: f64) -> Self {
        TranslationTuple {
            xi: self.xi.iter().map(|v| v.scale(factor)).collect(),
        }
    }

    pub fn add(&self, other: &TranslationTuple) -> Self {
        TranslationTuple {
            xi: self.xi.iter().zip(&other.xi).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &TranslationTuple) -> Self {
        TranslationTuple {
            xi: self.xi.iter().zip(&other.xi).map(|(a, b)| a - b).collect(),
        }
    }

    /// `±e_i` in slot `omega`, zero elsewhere.
    pub fn basis(family: &ConeFamily, omega: usize, index: usize, sign: f64) -> Self {
        let mut t = TranslationTuple::zeros(family);
        t.xi[omega] = Vector::basis(family.dim, index, sign);
        t
    }

    fn check(&self, family: &ConeFamily) -> Result<()> {
        if self.xi.len() != family.len() {
            return Err(Error::Input(format!(
                "translation tuple has {} entries, family has {} cones",
                self.xi.len(),
                family.len()
            )));
        }
        for v in &self.xi {
            family.check_dim(v)?;
        }
        Ok(())
    }

    fn rows(&self) -> Vec<Vec<f64>> {
        self.xi.iter().map(|v| v.as_slice().to_vec()).collect()
    }
}

/// A point `y` with certificates `y − ξ_ω ∈ C_ω`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntersectionPoint {
    pub y: Vector,
    pub norm: f64,
    pub residuals: Vec<MembershipCertificate>,
}

impl IntersectionPoint {
    pub fn validate(&self, family: &ConeFamily, xi: &TranslationTuple, tol: &Tolerance) -> bool {
        self.residuals.len() == family.len()
            && family
                .cones
                .iter()
                .zip(&self.residuals)
                .zip(&xi.xi)
                .all(|((cone, cert), x)| cert.member && cert.validate(cone, &(&self.y - x), tol))
    }

    fn scaled(&self, factor: f64) -> Self {
        IntersectionPoint {
            y: self.y.scale(factor),
            norm: self.norm * factor,
            residuals: self
                .residuals
                .iter()
                .map(|c| MembershipCertificate {
                    member: true,
                    coefficients: c
                        .coefficients
                        .as_ref()
                        .map(|l| l.iter().map(|v| v * factor).collect()),
                    separator: None,
                })
                .collect(),
        }
    }
}

/// Functionals `k_ω` with `Σ_ω k_ω = 0`, `k_ω·g ≥ 0` on the generators of
/// `C_ω` and `Σ_ω k_ω·ξ_ω > 0`; no `y` can then satisfy `y − ξ_ω ∈ C_ω`
/// for all `ω`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntersectionSeparator {
    pub functionals: Vec<Vector>,
}

impl IntersectionSeparator {
    pub fn validate(&self, family: &ConeFamily, xi: &TranslationTuple, tol: &Tolerance) -> bool {
        if self.functionals.len() != family.len() {
            return false;
        }
        let mut total = Vector::zeros(family.dim);
        let mut pairing = 0.0;
        for ((k, cone), x) in self.functionals.iter().zip(&family.cones).zip(&xi.xi) {
            if cone
                .generators
                .iter()
                .any(|g| k.dot(g) < -tol.mem_tol * (1.0 + g.max_abs()))
            {
                return false;
            }
            total = &total + k;
            pairing += k.dot(x);
        }
        total.max_abs() <= tol.mem_tol && pairing > 0.0
    }
}

struct IntersectionLp {
    lp: LpBuilder,
    y: Vec<usize>,
    lambdas: Vec<Vec<usize>>,
}

/// Variables `y` (free) and `λ_ω ≥ 0`; rows `y − G_ω λ_ω = ξ_ω`, ordered
/// by cone then coordinate.
fn intersection_lp(family: &ConeFamily, xi: &TranslationTuple) -> IntersectionLp {
    let mut lp = LpBuilder::new();
    let y: Vec<usize> = (0..family.dim).map(|_| lp.add_var(false, 0.0)).collect();
    let lambdas: Vec<Vec<usize>> = family.cones.iter().map(|c| c.add_vars(&mut lp)).collect();
    for ((cone, lam), x) in family.cones.iter().zip(&lambdas).zip(&xi.xi) {
        for (i, coord) in cone.expr(lam).into_iter().enumerate() {
            let mut row = vec![(y[i], 1.0)];
            row.extend(coord.into_iter().map(|(j, a)| (j, -a)));
            lp.add_row(row, x[i]);
        }
    }
    IntersectionLp { lp, y, lambdas }
}

fn point_from_solution(
    setup: &IntersectionLp,
    solution: &[f64],
    norm_value: f64,
) -> IntersectionPoint {
    let y = Vector::from_raw(setup.y.iter().map(|&j| solution[j]).collect());
    let residuals = setup
        .lambdas
        .iter()
        .map(|lam| MembershipCertificate {
            member: true,
            coefficients: Some(lam.iter().map(|&j| solution[j]).collect()),
            separator: None,
        })
        .collect();
    IntersectionPoint {
        y,
        norm: norm_value,
        residuals,
    }
}

/// Least-norm point of `∩ (ξ_ω + span{g : g active})` for the active set
/// read off `approx` at several thresholds. A candidate is kept only when it
/// is a member of every translate and passes the variational test
/// `min_{p} y·p ≥ ‖y‖²` over the intersection.
fn polish_euclidean(
    family: &ConeFamily,
    xi: &TranslationTuple,
    setup: &IntersectionLp,
    approx: &IntersectionPoint,
    tol: &Tolerance,
) -> Result<Option<IntersectionPoint>> {
    let lambdas: Vec<&Vec<f64>> = approx
        .residuals
        .iter()
        .filter_map(|c| c.coefficients.as_ref())
        .collect();
    if lambdas.len() != family.len() {
        return Ok(None);
    }
    let top = lambdas
        .iter()
        .flat_map(|l| l.iter())
        .fold(0.0_f64, |m, v| m.max(v.abs()));
    let mut tried: Vec<Vec<Vec<bool>>> = Vec::new();
    for k in 2..=10 {
        let tau = 10f64.powi(-k) * (1.0 + top);
        let support: Vec<Vec<bool>> = lambdas
            .iter()
            .map(|l| l.iter().map(|&v| v > tau).collect())
            .collect();
        if tried.contains(&support) {
            continue;
        }
        let Some(y) = affine_least_norm(family, xi, &support) else {
            tried.push(support);
            continue;
        };
        tried.push(support);
        let y_norm = y.dot(&y).sqrt();
        if y_norm > approx.norm + tol.gap_tol * (1.0 + approx.norm) {
            continue;
        }
        let mut residuals = Vec::with_capacity(family.len());
        for (cone, x) in family.cones.iter().zip(&xi.xi) {
            let cert = cone_membership(cone, &(&y - x), tol)?;
            if !cert.member {
                break;
            }
            residuals.push(cert);
        }
        if residuals.len() != family.len() {
            continue;
        }
        let mut lp = setup.lp.clone();
        for (&j, &c) in setup.y.iter().zip(y.iter()) {
            lp.set_cost(j, c);
        }
        let out = solve_lp(&lp.build()?, tol)?;
        let sq = y.dot(&y);
        match (out.status, out.value) {
            (LpStatus::Optimal, Some(v)) if v >= sq - 1e-10 * (1.0 + sq) => {
                return Ok(Some(IntersectionPoint {
                    y,
                    norm: y_norm,
                    residuals,
                }));
            }
            _ => continue,
        }
    }
    Ok(None)
}

fn affine_least_norm(
    family: &ConeFamily,
    xi: &TranslationTuple,
    support: &[Vec<bool>],
) -> Option<Vector> {
    use nalgebra::{DMatrix, DVector};
    let n = family.dim;
    let m = family.len();
    let mut a = DMatrix::<f64>::zeros(n * m, n);
    let mut b = DVector::<f64>::zeros(n * m);
    for (w, ((cone, x), active)) in family.cones.iter().zip(&xi.xi).zip(support).enumerate() {
        let cols: Vec<&Vector> = cone
            .generators
            .iter()
            .zip(active)
            .filter(|(_, &on)| on)
            .map(|(g, _)| g)
            .collect();
        let mut proj = DMatrix::<f64>::identity(n, n);
        if !cols.is_empty() {
            let g = DMatrix::from_fn(n, cols.len(), |i, j| cols[j][i]);
            let svd = g.svd(true, false);
            let u = svd.u?;
            let smax = svd.singular_values.max();
            for (r, &s) in svd.singular_values.iter().enumerate() {
                if s > 1e-12 * smax.max(1.0) {
                    let col = u.column(r);
                    proj -= &col * col.transpose();
                }
            }
        }
        let xv = DVector::from_column_slice(x.as_slice());
        a.view_mut((w * n, 0), (n, n)).copy_from(&proj);
        b.rows_mut(w * n, n).copy_from(&(&proj * xv));
    }
    let sol = a.clone().svd(true, true).solve(&b, 1e-12).ok()?;
    let residual = (&a * &sol - &b).amax();
    if residual > 1e-10 * (1.0 + b.amax()) {
        return None;
    }
    Vector::new(sol.iter().copied().collect()).ok()
}

/// Outcome of a plain feasibility test for one tuple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "feasible")]
pub enum TupleFeasibility {
    #[serde(rename = "true")]
    Feasible {
        y: Vector,
        coefficients: Vec<Vec<f64>>,
    },
    #[serde(rename = "false")]
    Infeasible { separator: IntersectionSeparator },
}

/// Decides `⋂_ω (ξ_ω + C_ω) ≠ ∅` with a point or a separating certificate.
pub fn intersection_feasibility(
    family: &ConeFamily,
    xi: &TranslationTuple,
    tol: &Tolerance,
) -> Result<TupleFeasibility> {
    xi.check(family)?;
    let setup = intersection_lp(family, xi);
    let out = solve_lp(&setup.lp.build()?, tol)?;
    match out.status {
        LpStatus::Optimal => {
            let sol = out.solution.unwrap_or_default();
            let p = point_from_solution(&setup, &sol, 0.0);
            Ok(TupleFeasibility::Feasible {
                y: p.y,
                coefficients: p
                    .residuals
                    .into_iter()
                    .map(|c| c.coefficients.unwrap_or_default())
                    .collect(),
            })
        }
        LpStatus::Infeasible => {
            let h = out.farkas.unwrap_or_default();
            let scale = h.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
            let n = family.dim;
            // rows carry −g_k on λ, so the Farkas functional is −k
            let functionals = (0..family.len())
                .map(|w| Vector::from_raw(h[w * n..(w + 1) * n].iter().map(|v| -v / scale).collect()))
                .collect();
            Ok(TupleFeasibility::Infeasible {
                separator: IntersectionSeparator { functionals },
            })
        }
        LpStatus::Unbounded => Err(Error::Solver("feasibility LP reported unbounded".into())),
    }
}

/// Minimizes `‖y‖` subject to `y − ξ_ω ∈ C_ω` for all `ω`.
pub fn intersect_min(
    family: &ConeFamily,
    norm: &NormSpec,
    xi: &TranslationTuple,
    tol: &Tolerance,
) -> Result<IntersectionPoint> {
    xi.check(family)?;
    norm.validate(family.dim)?;
    if xi.is_zero() {
        return Ok(IntersectionPoint {
            y: Vector::zeros(family.dim),
            norm: 0.0,
            residuals: family
                .cones
                .iter()
                .map(|c| MembershipCertificate {
                    member: true,
                    coefficients: Some(vec![0.0; c.generators.len()]),
                    separator: None,
                })
                .collect(),
        });
    }
    let setup = intersection_lp(family, xi);
    let y_expr: LinExpr = setup.y.iter().map(|&j| vec![(j, 1.0)]).collect();
    match minimize_norms(&setup.lp, &[y_expr], norm, family.dim, tol)? {
        NormedSolve::Optimal { solution, value } => {
            let approx = point_from_solution(&setup, &solution, value.max(0.0));
            if matches!(norm, NormSpec::L2) {
                if let Some(exact) = polish_euclidean(family, xi, &setup, &approx, tol)? {
                    return Ok(exact);
                }
            }
            Ok(approx)
        }
        NormedSolve::Infeasible => {
            let certificate = match intersection_feasibility(family, xi, tol)? {
                TupleFeasibility::Infeasible { separator } => separator
                    .functionals
                    .into_iter()
                    .map(Vector::into_inner)
                    .collect(),
                TupleFeasibility::Feasible { .. } => {
                    return Err(Error::Solver(
                        "norm-minimization LP infeasible on a feasible tuple".into(),
                    ))
                }
            };
            Err(Error::EmptyIntersection {
                xi: xi.rows(),
                certificate,
            })
        }
    }
}

/// `υ(ξ) = ‖ξ‖_∞ · I(ξ/‖ξ‖_∞)`, `υ(0) = 0`, with `I` the deterministic
/// minimal-norm intersection point.
pub fn upsilon_selection(
    family: &ConeFamily,
    norm: &NormSpec,
    xi: &TranslationTuple,
    tol: &Tolerance,
) -> Result<IntersectionPoint> {
    xi.check(family)?;
    let scale = xi.sup_norm(norm)?;
    if scale == 0.0 {
        return intersect_min(family, norm, xi, tol);
    }
    Ok(intersect_min(family, norm, &xi.scale(1.0 / scale), tol)?.scaled(scale))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TupleCertificate {
    pub xi: TranslationTuple,
    pub y: Vector,
    pub coefficients: Vec<Vec<f64>>,
}

impl TupleCertificate {
    pub fn validate(&self, family: &ConeFamily, tol: &Tolerance) -> bool {
        IntersectionPoint {
            y: self.y.clone(),
            norm: 0.0,
            residuals: self
                .coefficients
                .iter()
                .map(|c| MembershipCertificate {
                    member: true,
                    coefficients: Some(c.clone()),
                    separator: None,
                })
                .collect(),
        }
        .validate(family, &self.xi, tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailingTuple {
    pub xi: TranslationTuple,
    pub separator: IntersectionSeparator,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoadditiveResult {
    pub coadditive: bool,
    pub certificates: Vec<TupleCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing: Option<FailingTuple>,
}

impl CoadditiveResult {
    pub fn validate(&self, family: &ConeFamily, tol: &Tolerance) -> bool {
        let certs_ok = self.certificates.iter().all(|c| c.validate(family, tol));
        match (&self.failing, self.coadditive) {
            (None, true) => certs_ok && self.certificates.len() == 2 * family.dim * family.len(),
            (Some(f), false) => certs_ok && f.separator.validate(family, &f.xi, tol),
            _ => false,
        }
    }
}

/// Signed product-basis tuples `±E_{ω,i}`, ordered by cone, coordinate, sign.
pub fn basis_tuples(family: &ConeFamily) -> Vec<TranslationTuple> {
    let mut out = Vec::with_capacity(2 * family.dim * family.len());
    for w in 0..family.len() {
        for i in 0..family.dim {
            for s in [1.0, -1.0] {
                out.push(TranslationTuple::basis(family, w, i, s));
            }
        }
    }
    out
}

/// Decides whether every tuple of translates has a common point.
///
/// The feasible tuples form the convex cone `{(y − c_ω)_ω}`, so it is enough
/// to check the `2·n·|Ω|` signed product-basis tuples.
pub fn is_coadditive(family: &ConeFamily, tol: &Tolerance) -> Result<CoadditiveResult> {
    let mut certificates = Vec::new();
    for xi in basis_tuples(family) {
        match intersection_feasibility(family, &xi, tol)? {
            TupleFeasibility::Feasible { y, coefficients } => certificates.push(TupleCertificate {
                xi,
                y,
                coefficients,
            }),
            TupleFeasibility::Infeasible { separator } => {
                return Ok(CoadditiveResult {
                    coadditive: false,
                    certificates,
                    failing: Some(FailingTuple { xi, separator }),
                })
            }
        }
    }
    Ok(CoadditiveResult {
        coadditive: true,
        certificates,
        failing: None,
    })
}

/// Unit tuples for the coadditivity sweep: all vertex products in exact mode,
/// seeded tuples of unit vectors otherwise.
pub(crate) fn unit_tuples(
    family: &ConeFamily,
    norm: &NormSpec,
    mode: AlphaMode,
    samples: usize,
    seed: u64,
) -> Result<Vec<TranslationTuple>> {
    match mode {
        AlphaMode::ExactVertex => {
            let verts = ball_vertices(norm, family.dim)?;
            let count = verts
                .len()
                .checked_pow(family.len() as u32)
                .filter(|&c| c <= MAX_VERTEX_TUPLES)
                .ok_or_else(|| {
                    Error::Input(format!(
                        "{} vertices over {} cones exceed the exact sweep limit",
                        verts.len(),
                        family.len()
                    ))
                })?;
            Ok((0..count)
                .map(|mut code| {
                    let xi = (0..family.len())
                        .map(|_| {
                            let v = verts[code % verts.len()].clone();
                            code /= verts.len();
                            v
                        })
                        .collect();
                    TranslationTuple { xi }
                })
                .collect())
        }
        AlphaMode::SampledLowerBound => {
            if samples == 0 {
                return Err(Error::Input("sampled sweep needs at least one tuple".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples)
                .map(|_| {
                    let xi = (0..family.len())
                        .map(|_| random_unit(norm, &mut rng, family.dim))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(TranslationTuple { xi })
                })
                .collect()
        }
    }
}

/// `α = sup_{‖ξ‖_∞ ≤ 1} min { ‖y‖ : y ∈ ⋂_ω (ξ_ω + C_ω) }`.
pub fn alpha_coadditive(
    family: &ConeFamily,
    norm: &NormSpec,
    mode: AlphaMode,
    samples: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<AlphaResult> {
    let tuples = unit_tuples(family, norm, mode, samples, seed)?;
    alpha_coadditive_over(family, norm, mode, &tuples, tol)
}

/// As [`alpha_coadditive`] over caller-supplied unit tuples.
pub fn alpha_coadditive_over(
    family: &ConeFamily,
    norm: &NormSpec,
    mode: AlphaMode,
    tuples: &[TranslationTuple],
    tol: &Tolerance,
) -> Result<AlphaResult> {
    if tuples.is_empty() {
        return Err(Error::Input("no unit tuples to evaluate".into()));
    }
    let (best, alpha) = sweep_max(tuples, |xi| {
        intersect_min(family, norm, xi, tol)
            .map(|p| p.norm)
            .map_err(|e| match e {
                Error::EmptyIntersection { xi, .. } => {
                    Error::NotCoadditive(format!("translates of {xi:?} do not meet"))
                }
                other => other,
            })
    })?;
    Ok(AlphaResult {
        alpha,
        mode,
        witness: tuples[best].xi.clone(),
        samples: tuples.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn v(e: &[f64]) -> Vector {
        Vector::new(e.to_vec()).unwrap()
    }

    fn tuple(rows: &[&[f64]]) -> TranslationTuple {
        TranslationTuple::new(rows.iter().map(|r| v(r)).collect()).unwrap()
    }

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    /// Brute-force `min ‖y‖₂` over a grid of the region
    /// `{y ≥ 0} ∩ {y₁ − 1 ≥ |y₂|}`.
    fn quadrant_wedge_grid_oracle() -> f64 {
        let mut best = f64::INFINITY;
        let step = 1e-3;
        for a in 0..=3000 {
            for b in 0..=1000 {
                let (y1, y2) = (a as f64 * step, b as f64 * step);
                if y1 - 1.0 >= y2.abs() - 1e-12 {
                    best = best.min((y1 * y1 + y2 * y2).sqrt());
                }
            }
        }
        best
    }

    #[test]
    fn zero_tuple() {
        let fam = fixtures::quadrant_and_wedge();
        let p = intersect_min(&fam, &NormSpec::l2(), &TranslationTuple::zeros(&fam), &tol())
            .unwrap();
        assert!(p.y.is_zero());
        assert_eq!(p.norm, 0.0);
    }

    #[test]
    fn single_translated_orthant() {
        let fam = ConeFamily::new(2, vec![fixtures::orthant(2)]).unwrap();
        let xi = tuple(&[&[5.0, 5.0]]);
        let p = intersect_min(&fam, &NormSpec::l2(), &xi, &tol()).unwrap();
        assert!((&p.y - &v(&[5.0, 5.0])).max_abs() < 1e-7);
        assert!(p.validate(&fam, &xi, &tol()));
        let xi = tuple(&[&[-3.0, -4.0]]);
        let p = upsilon_selection(&fam, &NormSpec::l2(), &xi, &tol()).unwrap();
        assert!(p.y.max_abs() < 1e-9);
    }

    #[test]
    fn quadrant_wedge_point_matches_grid() {
        let oracle = quadrant_wedge_grid_oracle();
        assert!((oracle - 1.0).abs() < 1e-9);
        let fam = fixtures::quadrant_and_wedge();
        let xi = tuple(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let p = intersect_min(&fam, &NormSpec::l2(), &xi, &tol()).unwrap();
        assert!((p.norm - oracle).abs() < 1e-4);
        assert!((&p.y - &v(&[1.0, 0.0])).max_abs() < 1e-6);
        assert!(p.validate(&fam, &xi, &tol()));
        let p2 = upsilon_selection(&fam, &NormSpec::l2(), &xi.scale(2.0), &tol()).unwrap();
        assert!((&p2.y - &v(&[2.0, 0.0])).max_abs() < 1e-6);
    }

    #[test]
    fn coadditivity_verdicts() {
        let fam = fixtures::quadrant_and_wedge();
        let r = is_coadditive(&fam, &tol()).unwrap();
        assert!(r.coadditive);
        assert_eq!(r.certificates.len(), 8);
        assert!(r.validate(&fam, &tol()));

        let single = ConeFamily::new(2, vec![fixtures::orthant(2)]).unwrap();
        assert!(is_coadditive(&single, &tol()).unwrap().coadditive);

        let rays = fixtures::two_rays();
        let r = is_coadditive(&rays, &tol()).unwrap();
        assert!(!r.coadditive);
        assert!(r.validate(&rays, &tol()));
        let f = r.failing.unwrap();
        assert_eq!(f.xi, TranslationTuple::basis(&rays, 0, 0, 1.0));
    }

    #[test]
    fn rays_tuple_feasibility_by_direction() {
        // ξ₁ − ξ₂ must lie in C₂ − C₁ = {(−a, b) : a, b ≥ 0}
        let rays = fixtures::two_rays();
        let feasible = tuple(&[&[0.0, 0.0], &[1.0, 0.0]]);
        assert!(matches!(
            intersection_feasibility(&rays, &feasible, &tol()).unwrap(),
            TupleFeasibility::Feasible { .. }
        ));
        let infeasible = tuple(&[&[1.0, 0.0], &[0.0, 0.0]]);
        match intersection_feasibility(&rays, &infeasible, &tol()).unwrap() {
            TupleFeasibility::Infeasible { separator } => {
                assert!(separator.validate(&rays, &infeasible, &tol()))
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
        let err = intersect_min(&rays, &NormSpec::l2(), &infeasible, &tol()).unwrap_err();
        assert!(matches!(err, Error::EmptyIntersection { .. }));
    }

    #[test]
    fn exact_alpha_single_orthant() {
        // per-vertex projection onto a translated orthant: value max(0, ξ)
        let fam = ConeFamily::new(2, vec![fixtures::orthant(2)]).unwrap();
        let a = alpha_coadditive(&fam, &NormSpec::l1(), AlphaMode::ExactVertex, 0, 0, &tol())
            .unwrap();
        assert!((a.alpha - 1.0).abs() < 1e-12);
        assert_eq!(a.witness[0].as_slice(), &[1.0, 0.0]);
    }

    #[test]
    fn whole_space_alpha_is_zero() {
        let fam = fixtures::whole_space(2);
        let a = alpha_coadditive(&fam, &NormSpec::l1(), AlphaMode::ExactVertex, 0, 0, &tol())
            .unwrap();
        assert_eq!(a.alpha, 0.0);
    }

    #[test]
    fn orthant_twice_alpha_is_two() {
        // y ≥ max(ξ₁, ξ₂) coordinatewise; the worst vertex pair is (e₁, e₂)
        let fam = fixtures::orthant_twice(2);
        let a = alpha_coadditive(&fam, &NormSpec::l1(), AlphaMode::ExactVertex, 0, 0, &tol())
            .unwrap();
        assert!((a.alpha - 2.0).abs() < 1e-12);
        assert_eq!(a.samples, 16);
    }

    #[test]
    fn sampled_alpha_reproducible() {
        let fam = fixtures::quadrant_and_wedge();
        let a = alpha_coadditive(&fam, &NormSpec::l2(), AlphaMode::SampledLowerBound, 200, 3, &tol())
            .unwrap();
        let b = alpha_coadditive(&fam, &NormSpec::l2(), AlphaMode::SampledLowerBound, 200, 3, &tol())
            .unwrap();
        assert_eq!(a, b);
        assert!(a.alpha > 0.0 && a.alpha.is_finite());
    }

    #[test]
    fn not_coadditive_alpha_errors() {
        let fam = fixtures::two_rays();
        assert!(matches!(
            alpha_coadditive(&fam, &NormSpec::l1(), AlphaMode::ExactVertex, 0, 0, &tol()),
            Err(Error::NotCoadditive(_))
        ));
    }
}
