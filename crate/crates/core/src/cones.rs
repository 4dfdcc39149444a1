//! Finitely generated cones, membership with certificates, properness and
//! the generating test.

use serde::{Deserialize, Serialize};

use crate::epigraph::LinExpr;
use crate::error::{Error, Result};
use crate::geometry::{Tolerance, Vector};
use crate::lp::{solve_lp, LpBuilder, LpStatus};

/// `{ Σ_k λ_k g_k : λ_k ≥ 0 }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyhedralCone {
    pub label: String,
    pub generators: Vec<Vector>,
}

impl PolyhedralCone {
    pub fn new(label: impl Into<String>, generators: Vec<Vector>) -> Result<Self> {
        let label = label.into();
        let Some(first) = generators.first() else {
            return Err(Error::Input(format!("cone '{label}' has no generators")));
        };
        let dim = first.dim();
        if let Some(bad) = generators.iter().find(|g| g.dim() != dim) {
            return Err(Error::Input(format!(
                "cone '{label}': generator {:?} has dimension {}, expected {dim}",
                bad.as_slice(),
                bad.dim()
            )));
        }
        Ok(PolyhedralCone { label, generators })
    }

    /// Convenience constructor from raw rows; panics on invalid data.
    pub fn from_rows(label: &str, rows: &[&[f64]]) -> Self {
        let gens = rows
            .iter()
            .map(|r| Vector::new(r.to_vec()).expect("finite generator"))
            .collect();
        PolyhedralCone::new(label, gens).expect("valid cone")
    }

    pub fn dim(&self) -> usize {
        self.generators[0].dim()
    }

    /// `Σ_k λ_k g_k`.
    pub fn combine(&self, coefficients: &[f64]) -> Vector {
        let mut out = vec![0.0; self.dim()];
        for (g, &l) in self.generators.iter().zip(coefficients) {
            for (o, gi) in out.iter_mut().zip(g.iter()) {
                *o += l * gi;
            }
        }
        Vector::from_raw(out)
    }

    pub fn negated(&self, label: impl Into<String>) -> Self {
        PolyhedralCone {
            label: label.into(),
            generators: self.generators.iter().map(|g| -g).collect(),
        }
    }

    /// Adds one non-negative variable per generator.
    pub(crate) fn add_vars(&self, lp: &mut LpBuilder) -> Vec<usize> {
        self.generators.iter().map(|_| lp.add_var(true, 0.0)).collect()
    }

    /// The expression `Σ_k λ_k g_k` over the given variables.
    pub(crate) fn expr(&self, vars: &[usize]) -> LinExpr {
        (0..self.dim())
            .map(|i| {
                self.generators
                    .iter()
                    .zip(vars)
                    .filter(|(g, _)| g[i] != 0.0)
                    .map(|(g, &v)| (v, g[i]))
                    .collect()
            })
            .collect()
    }
}

/// A finite family `{C_ω}` sharing one ambient dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeFamily {
    pub dim: usize,
    pub cones: Vec<PolyhedralCone>,
}

impl ConeFamily {
    pub fn new(dim: usize, cones: Vec<PolyhedralCone>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Input("dimension must be positive".into()));
        }
        if cones.is_empty() {
            return Err(Error::Input("at least one cone required".into()));
        }
        for (k, c) in cones.iter().enumerate() {
            if c.dim() != dim {
                return Err(Error::Input(format!(
                    "cone '{}' has dimension {}, expected {dim}",
                    c.label,
                    c.dim()
                )));
            }
            if cones[..k].iter().any(|o| o.label == c.label) {
                return Err(Error::Input(format!("duplicate cone label '{}'", c.label)));
            }
        }
        Ok(ConeFamily { dim, cones })
    }

    pub fn labels(&self) -> Vec<&str> {
        self.cones.iter().map(|c| c.label.as_str()).collect()
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    pub(crate) fn check_dim(&self, x: &Vector) -> Result<()> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.dim(),
            });
        }
        Ok(())
    }
}

/// Either non-negative generator coefficients reproducing the point, or a
/// functional `h` with `h·x < 0 ≤ h·g` for every generator `g`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipCertificate {
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separator: Option<Vector>,
}

impl MembershipCertificate {
    /// Re-checks the certificate against `cone` and `x` within `mem_tol`.
    pub fn validate(&self, cone: &PolyhedralCone, x: &Vector, tol: &Tolerance) -> bool {
        match (self.member, &self.coefficients, &self.separator) {
            (true, Some(coef), None) => {
                coef.len() == cone.generators.len()
                    && coef.iter().all(|&l| l >= -tol.mem_tol)
                    && (&cone.combine(coef) - x).max_abs() <= tol.mem_tol * (1.0 + x.max_abs())
            }
            (false, None, Some(h)) => separates(h, &cone.generators, x, tol),
            _ => false,
        }
    }
}

pub(crate) fn separates(h: &Vector, generators: &[Vector], x: &Vector, tol: &Tolerance) -> bool {
    h.dot(x) < 0.0
        && generators
            .iter()
            .all(|g| h.dot(g) >= -tol.mem_tol * (1.0 + g.max_abs()))
}

fn unit_separator(farkas: &[f64]) -> Vector {
    let scale = farkas.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let scale = if scale > 0.0 { scale } else { 1.0 };
    // adding 0.0 turns -0.0 into 0.0
    Vector::from_raw(farkas.iter().map(|v| v / scale + 0.0).collect())
}

/// Decides `x ∈ cone` by LP feasibility of `Σ λ_k g_k = x`, `λ ≥ 0`.
pub fn cone_membership(
    cone: &PolyhedralCone,
    x: &Vector,
    tol: &Tolerance,
) -> Result<MembershipCertificate> {
    if x.dim() != cone.dim() {
        return Err(Error::DimensionMismatch {
            expected: cone.dim(),
            found: x.dim(),
        });
    }
    let mut lp = LpBuilder::new();
    let vars = cone.add_vars(&mut lp);
    for (i, coord) in cone.expr(&vars).into_iter().enumerate() {
        lp.add_row(coord, x[i]);
    }
    let out = solve_lp(&lp.build()?, tol)?;
    match out.status {
        LpStatus::Optimal => Ok(MembershipCertificate {
            member: true,
            coefficients: out.solution,
            separator: None,
        }),
        LpStatus::Infeasible => Ok(MembershipCertificate {
            member: false,
            coefficients: None,
            separator: Some(unit_separator(&out.farkas.unwrap_or_default())),
        }),
        LpStatus::Unbounded => Err(Error::Solver("membership LP reported unbounded".into())),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProperResult {
    pub proper: bool,
    /// Non-zero `x` with `x, −x ∈ C` when the cone is not proper.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vector>,
}

/// Decides `C ∩ −C = {0}`.
///
/// For each coordinate `i`, maximizes `x_i ≤ 1` over `x = Σλ g = −Σμ g`;
/// the lineality space is a subspace, so it is non-trivial iff some
/// coordinate reaches 1.
pub fn is_proper(cone: &PolyhedralCone, tol: &Tolerance) -> Result<ProperResult> {
    let n = cone.dim();
    for i in 0..n {
        let mut lp = LpBuilder::new();
        let lam = cone.add_vars(&mut lp);
        let mu = cone.add_vars(&mut lp);
        let lam_expr = cone.expr(&lam);
        let mu_expr = cone.expr(&mu);
        for (a, b) in lam_expr.iter().zip(&mu_expr) {
            let mut row = a.clone();
            row.extend(b.iter().copied());
            lp.add_row(row, 0.0);
        }
        let slack = lp.add_var(true, 0.0);
        let mut norm_row = lam_expr[i].clone();
        norm_row.push((slack, 1.0));
        lp.add_row(norm_row, 1.0);
        for &(j, a) in &lam_expr[i] {
            lp.set_cost(j, -a);
        }
        let out = solve_lp(&lp.build()?, tol)?;
        if out.status != LpStatus::Optimal {
            return Err(Error::Solver(format!(
                "properness LP ended with status {:?}",
                out.status
            )));
        }
        if out.value.unwrap_or(0.0) < -0.5 {
            let sol = out.solution.unwrap_or_default();
            let x = cone.combine(&lam.iter().map(|&j| sol[j]).collect::<Vec<_>>());
            return Ok(ProperResult {
                proper: false,
                witness: Some(x),
            });
        }
    }
    Ok(ProperResult {
        proper: true,
        witness: None,
    })
}

/// A decomposition of one signed basis direction over the family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectionCertificate {
    pub direction: Vector,
    /// `c_ω ∈ C_ω` with `Σ c_ω = direction`.
    pub parts: Vec<Vector>,
    pub coefficients: Vec<Vec<f64>>,
}

impl DirectionCertificate {
    pub fn validate(&self, family: &ConeFamily, tol: &Tolerance) -> bool {
        if self.parts.len() != family.len() || self.coefficients.len() != family.len() {
            return false;
        }
        let mut sum = Vector::zeros(family.dim);
        for ((cone, part), coef) in family.cones.iter().zip(&self.parts).zip(&self.coefficients) {
            let ok = MembershipCertificate {
                member: true,
                coefficients: Some(coef.clone()),
                separator: None,
            }
            .validate(cone, part, tol);
            if !ok {
                return false;
            }
            sum = &sum + part;
        }
        (&sum - &self.direction).max_abs() <= tol.mem_tol * (1.0 + self.direction.max_abs())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailingDirection {
    pub direction: Vector,
    /// `h·direction < 0 ≤ h·g` for every generator of every cone.
    pub separator: Vector,
}

impl FailingDirection {
    pub fn validate(&self, family: &ConeFamily, tol: &Tolerance) -> bool {
        let gens: Vec<Vector> = family
            .cones
            .iter()
            .flat_map(|c| c.generators.iter().cloned())
            .collect();
        separates(&self.separator, &gens, &self.direction, tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratingResult {
    pub generating: bool,
    pub certificates: Vec<DirectionCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing: Option<FailingDirection>,
}

impl GeneratingResult {
    pub fn validate(&self, family: &ConeFamily, tol: &Tolerance) -> bool {
        let certs_ok = self.certificates.iter().all(|c| c.validate(family, tol));
        match (&self.failing, self.generating) {
            (None, true) => certs_ok && self.certificates.len() == 2 * family.dim,
            (Some(f), false) => certs_ok && f.validate(family, tol),
            _ => false,
        }
    }
}

/// Signed basis directions in the order `+e_1, −e_1, +e_2, −e_2, …`.
pub fn signed_basis(dim: usize) -> Vec<Vector> {
    (0..dim)
        .flat_map(|i| [Vector::basis(dim, i, 1.0), Vector::basis(dim, i, -1.0)])
        .collect()
}

/// Decides whether `Σ_ω C_ω = R^n` by decomposing each of `±e_i`.
///
/// The sum of cones is a convex cone, so it is the whole space as soon as it
/// contains the `2n` signed basis vectors.
pub fn is_generating(family: &ConeFamily, tol: &Tolerance) -> Result<GeneratingResult> {
    let mut certificates = Vec::with_capacity(2 * family.dim);
    for direction in signed_basis(family.dim) {
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
            lp.add_row(row, direction[i]);
        }
        let out = solve_lp(&lp.build()?, tol)?;
        match out.status {
            LpStatus::Optimal => {
                let sol = out.solution.unwrap_or_default();
                let coefficients: Vec<Vec<f64>> = vars
                    .iter()
                    .map(|v| v.iter().map(|&j| sol[j]).collect())
                    .collect();
                let parts = family
                    .cones
                    .iter()
                    .zip(&coefficients)
                    .map(|(c, l)| c.combine(l))
                    .collect();
                certificates.push(DirectionCertificate {
                    direction,
                    parts,
                    coefficients,
                });
            }
            LpStatus::Infeasible => {
                return Ok(GeneratingResult {
                    generating: false,
                    certificates,
                    failing: Some(FailingDirection {
                        direction,
                        separator: unit_separator(&out.farkas.unwrap_or_default()),
                    }),
                })
            }
            LpStatus::Unbounded => {
                return Err(Error::Solver("generating LP reported unbounded".into()))
            }
        }
    }
    Ok(GeneratingResult {
        generating: true,
        certificates,
        failing: None,
    })
}
