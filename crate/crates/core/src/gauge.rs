//! The set-valued maps `Ψ(c) = Tc + D` behind both constants, realized
//! concretely, with the gauge `ρ`, the seminorm `q`, the openness constant
//! `β` and checks of the metric-cone axioms.
//!
//! Two forms are supported:
//!
//! * `Delta`: `C = ⊕_ω C_ω ⊂ ℓ¹(Ω, X)`, `T` the summation map, `D = {0}`,
//!   codomain `X`. Then `ρ(x)` is the minimal decomposition value.
//! * `Upsilon`: `C = X`, `T` the diagonal embedding, `D = ⊕_ω (−C_ω)`,
//!   codomain `X^Ω` with the sup norm. Then `ρ(ξ)` is the minimal norm of a
//!   point of `⋂_ω (ξ_ω + C_ω)`.
//!
//! Queries (points of the codomain) and fiber elements (points of `C`) are
//! passed around as flat vectors; tuples are stored cone by cone.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::alpha::{AlphaMode, AlphaResult};
use crate::cones::{cone_membership, ConeFamily};
use crate::decomposition::{
    alpha_conormal_over, decompose_min, delta_selection, unit_points, Decomposition,
};
use crate::error::{Error, Result};
use crate::geometry::{norm_eval, random_unit, NormSpec, Tolerance, Vector};
use crate::intersection::{
    alpha_coadditive_over, intersect_min, unit_tuples, upsilon_selection, TranslationTuple,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PsiForm {
    Delta,
    Upsilon,
}

impl PsiForm {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "delta" | "decomposition" => Some(PsiForm::Delta),
            "upsilon" | "intersection" => Some(PsiForm::Upsilon),
            _ => None,
        }
    }
}

/// `ρ(y)`, or the tag that `y` has no preimage.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", content = "value", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Gauge {
    Finite(f64),
    Infeasible,
}

impl Gauge {
    pub fn finite(self) -> Option<f64> {
        match self {
            Gauge::Finite(v) => Some(v),
            Gauge::Infeasible => None,
        }
    }

    fn max(self, other: Gauge) -> Gauge {
        match (self, other) {
            (Gauge::Finite(a), Gauge::Finite(b)) => Gauge::Finite(a.max(b)),
            _ => Gauge::Infeasible,
        }
    }
}

/// A selected fiber element together with generator coefficients that
/// certify it lies in `φ(query)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Selection {
    pub point: Vector,
    /// Per cone: for `Delta` the coefficients of `c_ω`, for `Upsilon` the
    /// coefficients of `y − ξ_ω`.
    pub coefficients: Vec<Vec<f64>>,
    /// `⟦point⟧`.
    pub value: f64,
}

impl Selection {
    /// Sum of two selections; coefficients add, so certificates add.
    pub fn add(&self, other: &Selection, inst: &PsiInstance) -> Result<Selection> {
        let point = &self.point + &other.point;
        let coefficients = self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        let value = inst.fiber_norm(&point)?;
        Ok(Selection {
            point,
            coefficients,
            value,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PsiInstance {
    pub form: PsiForm,
    pub family: ConeFamily,
    pub norm: NormSpec,
}

impl PsiInstance {
    pub fn new(form: PsiForm, family: ConeFamily, norm: NormSpec) -> Result<Self> {
        norm.validate(family.dim)?;
        Ok(PsiInstance { form, family, norm })
    }

    pub fn delta(family: ConeFamily, norm: NormSpec) -> Result<Self> {
        Self::new(PsiForm::Delta, family, norm)
    }

    pub fn upsilon(family: ConeFamily, norm: NormSpec) -> Result<Self> {
        Self::new(PsiForm::Upsilon, family, norm)
    }

    fn n(&self) -> usize {
        self.family.dim
    }

    fn blocks(&self, flat: &Vector) -> Vec<Vector> {
        flat.as_slice()
            .chunks(self.n())
            .map(|c| Vector::from_raw(c.to_vec()))
            .collect()
    }

    fn flatten(parts: &[Vector]) -> Vector {
        Vector::from_raw(parts.iter().flat_map(|p| p.iter().copied()).collect())
    }

    pub fn query_dim(&self) -> usize {
        match self.form {
            PsiForm::Delta => self.n(),
            PsiForm::Upsilon => self.n() * self.family.len(),
        }
    }

    pub fn fiber_dim(&self) -> usize {
        match self.form {
            PsiForm::Delta => self.n() * self.family.len(),
            PsiForm::Upsilon => self.n(),
        }
    }

    fn check_query(&self, y: &Vector) -> Result<()> {
        if y.dim() != self.query_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.query_dim(),
                found: y.dim(),
            });
        }
        Ok(())
    }

    /// Norm of the codomain `Y`: `‖·‖` on `X`, or the sup norm on `X^Ω`.
    pub fn query_norm(&self, y: &Vector) -> Result<f64> {
        self.check_query(y)?;
        match self.form {
            PsiForm::Delta => norm_eval(&self.norm, y),
            PsiForm::Upsilon => self.tuple(y).sup_norm(&self.norm),
        }
    }

    /// `⟦c⟧`: the `l1` sum over cones, or the norm of `X`.
    pub fn fiber_norm(&self, c: &Vector) -> Result<f64> {
        match self.form {
            PsiForm::Delta => self.blocks(c).iter().map(|b| norm_eval(&self.norm, b)).sum(),
            PsiForm::Upsilon => norm_eval(&self.norm, c),
        }
    }

    pub fn tuple(&self, y: &Vector) -> TranslationTuple {
        TranslationTuple { xi: self.blocks(y) }
    }

    pub fn query_from_tuple(xi: &TranslationTuple) -> Vector {
        Self::flatten(&xi.xi)
    }

    /// `T c`.
    pub fn apply_t(&self, c: &Vector) -> Vector {
        match self.form {
            PsiForm::Delta => {
                let mut out = Vector::zeros(self.n());
                for b in self.blocks(c) {
                    out = &out + &b;
                }
                out
            }
            PsiForm::Upsilon => {
                Self::flatten(&vec![c.clone(); self.family.len()])
            }
        }
    }

    /// `ρ(y) = inf { ⟦c⟧ : y ∈ Tc + D }`, through the same optimizers as the
    /// constants themselves.
    pub fn rho(&self, y: &Vector, tol: &Tolerance) -> Result<Gauge> {
        self.check_query(y)?;
        match self.form {
            PsiForm::Delta => match decompose_min(&self.family, &self.norm, y, tol) {
                Ok(d) => Ok(Gauge::Finite(d.value)),
                Err(Error::NotDecomposable { .. }) => Ok(Gauge::Infeasible),
                Err(e) => Err(e),
            },
            PsiForm::Upsilon => match intersect_min(&self.family, &self.norm, &self.tuple(y), tol)
            {
                Ok(p) => Ok(Gauge::Finite(p.norm)),
                Err(Error::EmptyIntersection { .. }) => Ok(Gauge::Infeasible),
                Err(e) => Err(e),
            },
        }
    }

    /// The homogeneous selection of `φ` at `y` (`δ` or `υ`).
    pub fn select(&self, y: &Vector, tol: &Tolerance) -> Result<Selection> {
        self.check_query(y)?;
        match self.form {
            PsiForm::Delta => {
                let d = delta_selection(&self.family, &self.norm, y, tol)?;
                Ok(self.from_decomposition(d))
            }
            PsiForm::Upsilon => {
                let p = upsilon_selection(&self.family, &self.norm, &self.tuple(y), tol)?;
                Ok(Selection {
                    point: p.y,
                    coefficients: p
                        .residuals
                        .into_iter()
                        .map(|c| c.coefficients.unwrap_or_default())
                        .collect(),
                    value: p.norm,
                })
            }
        }
    }

    fn from_decomposition(&self, d: Decomposition) -> Selection {
        Selection {
            point: Self::flatten(&d.parts),
            coefficients: d.coefficients,
            value: d.value,
        }
    }

    /// Largest violation of the certificate that `sel ∈ φ(y)`: membership
    /// residuals of the coefficients and, for `Delta`, the reconstruction.
    pub fn certificate_residual(&self, y: &Vector, sel: &Selection) -> Result<f64> {
        self.check_query(y)?;
        if sel.coefficients.len() != self.family.len() {
            return Err(Error::Input("selection has the wrong number of cones".into()));
        }
        let mut worst = 0.0_f64;
        for coef in &sel.coefficients {
            for &l in coef {
                worst = worst.max(-l);
            }
        }
        match self.form {
            PsiForm::Delta => {
                let parts = self.blocks(&sel.point);
                let mut sum = Vector::zeros(self.n());
                for ((cone, part), coef) in self.family.cones.iter().zip(&parts).zip(&sel.coefficients) {
                    worst = worst.max((&cone.combine(coef) - part).max_abs());
                    sum = &sum + part;
                }
                worst = worst.max((&sum - y).max_abs());
            }
            PsiForm::Upsilon => {
                let xi = self.blocks(y);
                for ((cone, x), coef) in self.family.cones.iter().zip(&xi).zip(&sel.coefficients) {
                    worst = worst.max((&cone.combine(coef) - &(&sel.point - x)).max_abs());
                }
            }
        }
        Ok(worst)
    }

    pub fn certifies(&self, y: &Vector, sel: &Selection, tol: &Tolerance) -> Result<bool> {
        let scale = 1.0 + y.max_abs().max(sel.point.max_abs());
        Ok(self.certificate_residual(y, sel)? <= tol.mem_tol * scale)
    }

    /// Decides `c ∈ φ(y)` from scratch with membership LPs.
    pub fn in_fiber(&self, y: &Vector, c: &Vector, tol: &Tolerance) -> Result<bool> {
        self.check_query(y)?;
        if c.dim() != self.fiber_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.fiber_dim(),
                found: c.dim(),
            });
        }
        match self.form {
            PsiForm::Delta => {
                let parts = self.blocks(c);
                let mut sum = Vector::zeros(self.n());
                for (cone, part) in self.family.cones.iter().zip(&parts) {
                    if !cone_membership(cone, part, tol)?.member {
                        return Ok(false);
                    }
                    sum = &sum + part;
                }
                Ok((&sum - y).max_abs() <= tol.mem_tol * (1.0 + y.max_abs()))
            }
            PsiForm::Upsilon => {
                for (cone, x) in self.family.cones.iter().zip(self.blocks(y)) {
                    if !cone_membership(cone, &(c - &x), tol)?.member {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// Unit queries for constant sweeps.
    pub fn unit_queries(
        &self,
        mode: AlphaMode,
        samples: usize,
        seed: u64,
    ) -> Result<Vec<Vector>> {
        match self.form {
            PsiForm::Delta => unit_points(&self.norm, self.n(), mode, samples, seed),
            PsiForm::Upsilon => Ok(unit_tuples(&self.family, &self.norm, mode, samples, seed)?
                .iter()
                .map(Self::query_from_tuple)
                .collect()),
        }
    }

    /// A seeded point on the unit sphere of the codomain.
    pub fn random_unit_query(&self, rng: &mut ChaCha8Rng) -> Result<Vector> {
        match self.form {
            PsiForm::Delta => random_unit(&self.norm, rng, self.n()),
            PsiForm::Upsilon => {
                let mut parts = Vec::with_capacity(self.family.len());
                for _ in 0..self.family.len() {
                    let scale: f64 = rng.random_range(0.0..1.0);
                    parts.push(random_unit(&self.norm, rng, self.n())?.scale(scale));
                }
                let y = Self::flatten(&parts);
                let s = self.query_norm(&y)?;
                Ok(y.scale(1.0 / s))
            }
        }
    }

    /// The constant `α = sup ρ` over the given unit queries.
    pub fn alpha_over(
        &self,
        mode: AlphaMode,
        queries: &[Vector],
        tol: &Tolerance,
    ) -> Result<AlphaResult> {
        match self.form {
            PsiForm::Delta => alpha_conormal_over(&self.family, &self.norm, mode, queries, tol),
            PsiForm::Upsilon => {
                let tuples: Vec<TranslationTuple> = queries.iter().map(|q| self.tuple(q)).collect();
                alpha_coadditive_over(&self.family, &self.norm, mode, &tuples, tol)
            }
        }
    }

    pub fn alpha(
        &self,
        mode: AlphaMode,
        samples: usize,
        seed: u64,
        tol: &Tolerance,
    ) -> Result<AlphaResult> {
        let queries = self.unit_queries(mode, samples, seed)?;
        self.alpha_over(mode, &queries, tol)
    }

    /// Exact mode when the norm allows it.
    pub fn default_mode(&self) -> AlphaMode {
        if self.norm.is_polyhedral() {
            AlphaMode::ExactVertex
        } else {
            AlphaMode::SampledLowerBound
        }
    }
}

pub fn gauge_rho(inst: &PsiInstance, y: &Vector, tol: &Tolerance) -> Result<Gauge> {
    inst.rho(y, tol)
}

/// `q(y) = ρ(y) ∨ ρ(−y)`.
pub fn seminorm_q(inst: &PsiInstance, y: &Vector, tol: &Tolerance) -> Result<Gauge> {
    Ok(inst.rho(y, tol)?.max(inst.rho(&-y, tol)?))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaResult {
    /// `sup ρ` over the unit sphere of the codomain.
    pub alpha: f64,
    /// `1 / alpha`; absent when `alpha = 0`, in which case every ball of the
    /// codomain lies in the image of the open unit ball.
    pub beta: Option<f64>,
    pub alpha_times_beta: Option<f64>,
    pub mode: AlphaMode,
    pub samples: usize,
    pub witness: Vec<Vector>,
}

/// The largest `β` with `β·B_Y ⊆ Ψ(B_C)`, i.e. `1 / sup_{‖d‖=1} ρ(d)`.
///
/// Exact over ball vertices for polyhedral norms, otherwise an upper bound
/// from sampled directions.
pub fn beta_openness(
    inst: &PsiInstance,
    mode: AlphaMode,
    samples: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<BetaResult> {
    let a = inst.alpha(mode, samples, seed, tol)?;
    let beta = (a.alpha > 0.0).then(|| 1.0 / a.alpha);
    Ok(BetaResult {
        alpha: a.alpha,
        beta,
        alpha_times_beta: beta.map(|b| a.alpha * b),
        mode: a.mode,
        samples: a.samples,
        witness: a.witness,
    })
}

/// Largest absolute error observed for one law, normalized by the scale of
/// the quantities involved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomCheck {
    pub law: String,
    pub max_error: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub checks: Vec<AxiomCheck>,
    pub all_passed: bool,
}

/// Checks the abstract-cone laws, the two metric-cone laws, closure of the
/// cone under its operations and the additivity and homogeneity of `T` on
/// `samples` seeded triples of members of `C`, with metric
/// `d(u, v) = ⟦u − v⟧`.
pub fn metric_cone_axioms(
    inst: &PsiInstance,
    samples: usize,
    seed: u64,
    tol: &Tolerance,
) -> Result<AxiomReport> {
    const EXACT: f64 = 1e-12;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut errors: Vec<(&str, f64)> = vec![
        ("u + 0 = u", 0.0),
        ("(u + v) + w = u + (v + w)", 0.0),
        ("u + v = v + u", 0.0),
        ("u + v = u + w implies v = w", 0.0),
        ("1u = u", 0.0),
        ("(λμ)u = λ(μu)", 0.0),
        ("(λ + μ)u = λu + μu", 0.0),
        ("λ(u + v) = λu + λv", 0.0),
        ("d(0, λu) = λ d(0, u)", 0.0),
        ("d(u + v, u + w) ≤ d(v, w)", 0.0),
        ("u + v and λu stay in C", 0.0),
        ("T additive and positively homogeneous", 0.0),
    ];
    let rel = |a: &Vector, b: &Vector| (a - b).max_abs() / (1.0 + a.max_abs().max(b.max_abs()));
    let zero = Vector::zeros(inst.fiber_dim());
    for _ in 0..samples {
        let u = sample_member(inst, &mut rng);
        let v = sample_member(inst, &mut rng);
        let w = sample_member(inst, &mut rng);
        let lam: f64 = rng.random_range(0.0..5.0);
        let mu: f64 = rng.random_range(0.0..5.0);

        let mut bump = |k: usize, e: f64| errors[k].1 = errors[k].1.max(e);
        bump(0, rel(&(&u + &zero), &u));
        bump(1, rel(&(&(&u + &v) + &w), &(&u + &(&v + &w))));
        bump(2, rel(&(&u + &v), &(&v + &u)));
        // cancellation: subtracting u back out of u + v recovers v
        bump(3, rel(&(&(&u + &v) - &u), &v));
        bump(4, rel(&u.scale(1.0), &u));
        bump(5, rel(&u.scale(lam * mu), &u.scale(mu).scale(lam)));
        bump(6, rel(&u.scale(lam + mu), &(&u.scale(lam) + &u.scale(mu))));
        bump(7, rel(&(&u + &v).scale(lam), &(&u.scale(lam) + &v.scale(lam))));

        let d0u = inst.fiber_norm(&u)?;
        let d0lu = inst.fiber_norm(&u.scale(lam))?;
        bump(8, (d0lu - lam * d0u).abs() / (1.0 + d0lu));
        let left = inst.fiber_norm(&(&(&u + &v) - &(&u + &w)))?;
        let right = inst.fiber_norm(&(&v - &w))?;
        bump(9, (left - right).max(0.0) / (1.0 + right));

        let closed = in_cone(inst, &(&u + &v), tol)? && in_cone(inst, &u.scale(lam), tol)?;
        bump(10, if closed { 0.0 } else { 1.0 });

        let t_add = rel(&inst.apply_t(&(&u + &v)), &(&inst.apply_t(&u) + &inst.apply_t(&v)));
        let t_hom = rel(&inst.apply_t(&u.scale(lam)), &inst.apply_t(&u).scale(lam));
        bump(11, t_add.max(t_hom));
    }
    let checks: Vec<AxiomCheck> = errors
        .into_iter()
        .map(|(law, e)| AxiomCheck {
            law: law.to_string(),
            max_error: e,
            passed: e <= EXACT,
        })
        .collect();
    let all_passed = checks.iter().all(|c| c.passed);
    Ok(AxiomReport {
        samples,
        seed,
        tolerance: EXACT,
        checks,
        all_passed,
    })
}

fn sample_member(inst: &PsiInstance, rng: &mut ChaCha8Rng) -> Vector {
    match inst.form {
        PsiForm::Delta => {
            let parts: Vec<Vector> = inst
                .family
                .cones
                .iter()
                .map(|c| {
                    let coef: Vec<f64> =
                        c.generators.iter().map(|_| rng.random_range(0.0..2.0)).collect();
                    c.combine(&coef)
                })
                .collect();
            PsiInstance::flatten(&parts)
        }
        PsiForm::Upsilon => Vector::from_raw(
            (0..inst.n()).map(|_| rng.random_range(-2.0..2.0)).collect(),
        ),
    }
}

fn in_cone(inst: &PsiInstance, c: &Vector, tol: &Tolerance) -> Result<bool> {
    match inst.form {
        PsiForm::Delta => {
            for (cone, part) in inst.family.cones.iter().zip(inst.blocks(c)) {
                if !cone_membership(cone, &part, tol)?.member {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        PsiForm::Upsilon => Ok(true),
    }
}
