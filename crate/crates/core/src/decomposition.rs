//! Minimal decompositions `x = Σ_ω c_ω`, `c_ω ∈ C_ω`, the conormality
//! constant and the homogeneous decomposition selection.

use serde::{Deserialize, Serialize};

use crate::alpha::{sweep_max, AlphaMode, AlphaResult};
use crate::cones::{ConeFamily, MembershipCertificate};
use crate::epigraph::{minimize_norms, LinExpr, NormedSolve};
use crate::error::{Error, Result};
use crate::geometry::{ball_vertices, norm_eval, sphere_mesh, NormSpec, Tolerance, Vector};
use crate::lp::LpBuilder;

/// One element of `Δ(x)` with its `l1`-sum value `Σ_ω ‖c_ω‖`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub parts: Vec<Vector>,
    /// Generator coefficients certifying `c_ω ∈ C_ω`.
    pub coefficients: Vec<Vec<f64>>,
    pub value: f64,
}

impl Decomposition {
    pub fn zero(family: &ConeFamily) -> Self {
        Decomposition {
            parts: family.cones.iter().map(|_| Vector::zeros(family.dim)).collect(),
            coefficients: family
                .cones
                .iter()
                .map(|c| vec![0.0; c.generators.len()])
                .collect(),
            value: 0.0,
        }
    }

    pub fn sum(&self) -> Vector {
        let mut out = Vector::zeros(self.parts[0].dim());
        for p in &self.parts {
            out = &out + p;
        }
        out
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Decomposition {
            parts: self.parts.iter().map(|p| p.scale(factor)).collect(),
            coefficients: self
                .coefficients
                .iter()
                .map(|c| c.iter().map(|v| v * factor).collect())
                .collect(),
            value: self.value * factor,
        }
    }

    /// Recomputes `Σ_ω ‖c_ω‖`.
    pub fn recompute_value(&self, norm: &NormSpec) -> Result<f64> {
        self.parts.iter().map(|p| norm_eval(norm, p)).sum()
    }

    /// Checks the membership certificates and the reconstruction `Σ c_ω = x`.
    pub fn validate(&self, family: &ConeFamily, x: &Vector, tol: &Tolerance) -> bool {
        if self.parts.len() != family.len() || self.coefficients.len() != family.len() {
            return false;
        }
        let members_ok = family
            .cones
            .iter()
            .zip(&self.parts)
            .zip(&self.coefficients)
            .all(|((cone, part), coef)| {
                MembershipCertificate {
                    member: true,
                    coefficients: Some(coef.clone()),
                    separator: None,
                }
                .validate(cone, part, tol)
            });
        members_ok && reconstruction_error(self, x) <= tol.mem_tol * (1.0 + x.max_abs())
    }
}

pub fn reconstruction_error(d: &Decomposition, x: &Vector) -> f64 {
    (&d.sum() - x).max_abs()
}

/// Minimizes `Σ_ω ‖c_ω‖` over all decompositions of `x`.
pub fn decompose_min(
    family: &ConeFamily,
    norm: &NormSpec,
    x: &Vector,
    tol: &Tolerance,
) -> Result<Decomposition> {
    family.check_dim(x)?;
    norm.validate(family.dim)?;
    if x.is_zero() {
        return Ok(Decomposition::zero(family));
    }
    let mut lp = LpBuilder::new();
    let vars: Vec<Vec<usize>> = family.cones.iter().map(|c| c.add_vars(&mut lp)).collect();
    let exprs: Vec<LinExpr> = family
        .cones
        .iter()
        .zip(&vars)
        .map(|(c, v)| c.expr(v))
        .collect();
    for i in 0..family.dim {
        let row = exprs.iter().flat_map(|e| e[i].iter().copied()).collect();
        lp.add_row(row, x[i]);
    }
    match minimize_norms(&lp, &exprs, norm, family.dim, tol)? {
        NormedSolve::Optimal { solution, value } => {
            let coefficients: Vec<Vec<f64>> = vars
                .iter()
                .map(|v| v.iter().map(|&j| solution[j]).collect())
                .collect();
            let parts = family
                .cones
                .iter()
                .zip(&coefficients)
                .map(|(c, l)| c.combine(l))
                .collect();
            Ok(Decomposition {
                parts,
                coefficients,
                value: value.max(0.0),
            })
        }
        NormedSolve::Infeasible => Err(Error::NotDecomposable {
            point: x.as_slice().to_vec(),
        }),
    }
}

/// The positively homogeneous selection `δ(x) = ‖x‖ · D(x/‖x‖)`, `δ(0) = 0`,
/// where `D` is the deterministic minimal decomposition.
pub fn delta_selection(
    family: &ConeFamily,
    norm: &NormSpec,
    x: &Vector,
    tol: &Tolerance,
) -> Result<Decomposition> {
    family.check_dim(x)?;
    let scale = norm_eval(norm, x)?;
    if scale == 0.0 {
        return Ok(Decomposition::zero(family));
    }
    let unit = x.scale(1.0 / scale);
    Ok(decompose_min(family, norm, &unit, tol)?.scaled(scale))
}

/// Unit points over which a constant is maximized.
pub(crate) fn unit_points(
    norm: &NormSpec,
    dim: usize,
    mode: AlphaMode,
    samples: usize,
    seed: u64,
) -> Result<Vec<Vector>> {
    match mode {
        AlphaMode::ExactVertex => ball_vertices(norm, dim),
        AlphaMode::SampledLowerBound => sphere_mesh(norm, dim, samples, seed),
    }
}

/// `α = sup_{‖x‖=1} min Σ_ω ‖c_ω‖`.
pub fn alpha_conormal(
    family: &ConeFamily,
    norm: &NormSpec,
    mode: AlphaMode,
    samples: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<AlphaResult> {
    let points = unit_points(norm, family.dim, mode, samples, seed)?;
    alpha_conormal_over(family, norm, mode, &points, tol)
}

/// As [`alpha_conormal`] over caller-supplied unit points.
pub fn alpha_conormal_over(
    family: &ConeFamily,
    norm: &NormSpec,
    mode: AlphaMode,
    points: &[Vector],
    tol: &Tolerance,
) -> Result<AlphaResult> {
    if points.is_empty() {
        return Err(Error::Input("no unit points to evaluate".into()));
    }
    let (best, alpha) = sweep_max(points, |p| {
        decompose_min(family, norm, p, tol)
            .map(|d| d.value)
            .map_err(|e| match e {
                Error::NotDecomposable { point } => {
                    Error::NotGenerating(format!("no decomposition exists for {point:?}"))
                }
                other => other,
            })
    })?;
    Ok(AlphaResult {
        alpha,
        mode,
        witness: vec![points[best].clone()],
        samples: points.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn v(e: &[f64]) -> Vector {
        Vector::new(e.to_vec()).unwrap()
    }

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    /// Closed-form minimum for the three-ray family under `l2`: with
    /// `x = a e₁ + b e₂ + c (−e₁−e₂)`, `a = x₁ + c`, `b = x₂ + c`, so the
    /// cost is `x₁ + x₂ + (2 + √2) c` minimized at `c = max(0, −x₁, −x₂)`.
    fn three_rays_oracle(x: &[f64]) -> (f64, f64) {
        let c = 0.0_f64.max(-x[0]).max(-x[1]);
        (x[0] + x[1] + (2.0 + 2f64.sqrt()) * c, c)
    }

    #[test]
    fn lattice_parts_for_orthant_pair() {
        let d = decompose_min(
            &fixtures::orthant_pair(2),
            &NormSpec::l1(),
            &v(&[3.0, -4.0]),
            &tol(),
        )
        .unwrap();
        assert_eq!(d.parts[0].as_slice(), &[3.0, 0.0]);
        assert_eq!(d.parts[1].as_slice(), &[0.0, -4.0]);
        assert!((d.value - 7.0).abs() < 1e-12);
    }

    #[test]
    fn zero_point() {
        let fam = fixtures::three_rays();
        let d = decompose_min(&fam, &NormSpec::l2(), &Vector::zeros(2), &tol()).unwrap();
        assert_eq!(d.value, 0.0);
        assert!(d.parts.iter().all(Vector::is_zero));
    }

    #[test]
    fn three_rays_first_basis_vector() {
        let d = decompose_min(&fixtures::three_rays(), &NormSpec::l2(), &v(&[1.0, 0.0]), &tol())
            .unwrap();
        assert!((d.value - three_rays_oracle(&[1.0, 0.0]).0).abs() < 1e-6);
        assert!((&d.parts[0] - &v(&[1.0, 0.0])).max_abs() < 1e-9);
        assert!(d.parts[1].max_abs() < 1e-9 && d.parts[2].max_abs() < 1e-9);
    }

    #[test]
    fn three_rays_matches_closed_form_on_grid() {
        let fam = fixtures::three_rays();
        for k in 0..64 {
            let th = std::f64::consts::TAU * k as f64 / 64.0;
            let x = v(&[1.7 * th.cos(), 1.7 * th.sin()]);
            let d = decompose_min(&fam, &NormSpec::l2(), &x, &tol()).unwrap();
            let (want, c) = three_rays_oracle(x.as_slice());
            assert!((d.value - want).abs() < 1e-6, "x={x:?} got {} want {want}", d.value);
            assert!((d.coefficients[2][0] - c).abs() < 1e-6);
            assert!(d.validate(&fam, &x, &tol()));
        }
    }

    #[test]
    fn selection_is_homogeneous() {
        let fam = fixtures::orthant_pair(2);
        let x = v(&[3.0, -4.0]);
        let d = delta_selection(&fam, &NormSpec::l1(), &x, &tol()).unwrap();
        assert_eq!(d.parts[0].as_slice(), &[3.0, 0.0]);
        assert_eq!(d.parts[1].as_slice(), &[0.0, -4.0]);
        let d2 = delta_selection(&fam, &NormSpec::l1(), &x.scale(2.0), &tol()).unwrap();
        assert_eq!(d2.parts[0].as_slice(), &[6.0, 0.0]);
        assert_eq!(d2.parts[1].as_slice(), &[0.0, -8.0]);
        let z = delta_selection(&fam, &NormSpec::l1(), &Vector::zeros(2), &tol()).unwrap();
        assert_eq!(z, Decomposition::zero(&fam));
    }

    #[test]
    fn selection_along_third_ray() {
        let fam = fixtures::three_rays();
        let d = delta_selection(&fam, &NormSpec::l2(), &v(&[-1.0, -1.0]), &tol()).unwrap();
        assert!(d.parts[0].max_abs() < 1e-9);
        assert!(d.parts[1].max_abs() < 1e-9);
        assert!((&d.parts[2] - &v(&[-1.0, -1.0])).max_abs() < 1e-9);
        assert!((d.value - 2f64.sqrt()).abs() < 1e-7);
    }

    #[test]
    fn exact_alpha_for_orthant_pair() {
        let a = alpha_conormal(
            &fixtures::orthant_pair(2),
            &NormSpec::l1(),
            AlphaMode::ExactVertex,
            0,
            0,
            &tol(),
        )
        .unwrap();
        assert!((a.alpha - 1.0).abs() < 1e-12);
        assert_eq!(a.witness[0].as_slice(), &[1.0, 0.0]);
    }

    #[test]
    fn whole_space_alpha_is_one() {
        for norm in [NormSpec::l1(), NormSpec::linf()] {
            let a = alpha_conormal(
                &fixtures::whole_space(3),
                &norm,
                AlphaMode::ExactVertex,
                0,
                0,
                &tol(),
            )
            .unwrap();
            assert!((a.alpha - 1.0).abs() < 1e-12);
        }
        let a = alpha_conormal(
            &fixtures::whole_space(2),
            &NormSpec::l2(),
            AlphaMode::SampledLowerBound,
            64,
            0,
            &tol(),
        )
        .unwrap();
        assert!((a.alpha - 1.0).abs() < 1e-6);
    }

    #[test]
    fn non_generating_family_errors() {
        let fam = fixtures::two_rays();
        assert!(matches!(
            decompose_min(&fam, &NormSpec::l1(), &v(&[-1.0, 0.0]), &tol()),
            Err(Error::NotDecomposable { .. })
        ));
        assert!(matches!(
            alpha_conormal(&fam, &NormSpec::l1(), AlphaMode::ExactVertex, 0, 0, &tol()),
            Err(Error::NotGenerating(_))
        ));
    }

    #[test]
    fn l2_has_no_exact_mode() {
        assert!(matches!(
            alpha_conormal(
                &fixtures::three_rays(),
                &NormSpec::l2(),
                AlphaMode::ExactVertex,
                0,
                0,
                &tol()
            ),
            Err(Error::NotPolyhedral)
        ));
    }
}
