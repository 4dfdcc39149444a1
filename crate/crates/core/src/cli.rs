//! Command-line front end. Every command reads a problem file and writes a
//! [`RunReport`].
//!
//! Exit codes: 0 success or true verdict, 1 negative verdict or
//! infeasibility, 2 input error, 3 solver error.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::alpha::{AlphaMode, AlphaResult};
use crate::audit::{continuity_audit, lipschitz_probe};
use crate::cones::{cone_membership, is_generating, ConeFamily, PolyhedralCone};
use crate::decomposition::{alpha_conormal, decompose_min};
use crate::error::{Error, Result};
use crate::gauge::{beta_openness, seminorm_q, Gauge, PsiForm, PsiInstance};
use crate::geometry::{Tolerance, Vector};
use crate::intersection::{
    alpha_coadditive, intersect_min, is_coadditive, IntersectionSeparator, TranslationTuple,
};
use crate::problem::{parse_point, parse_problem, parse_translation, Problem};
use crate::report::{emit_report, Format, Parameters, Quantity, RunReport, RunStatus, Timing, TOOLKIT};

#[derive(Debug, Parser)]
#[command(name = "conormal", version, about = "Conormality and coadditivity of finite cone families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct Common {
    /// Problem file (JSON).
    problem: PathBuf,
    /// LP feasibility tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Certificate re-validation tolerance.
    #[arg(long = "mem-tol")]
    mem_tol: Option<f64>,
    /// Euclidean cutting-plane gap tolerance.
    #[arg(long = "gap-tol")]
    gap_tol: Option<f64>,
    /// exact | sample
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// json | csv
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Debug, Clone, Args)]
struct FormArg {
    /// delta | upsilon
    #[arg(long, default_value = "delta")]
    form: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether the cones sum to the whole space.
    CheckConormal(Common),
    /// Decide whether every tuple of translates has a common point.
    CheckCoadditive(Common),
    /// Conormality constant.
    AlphaConormal(Common),
    /// Coadditivity constant.
    AlphaCoadditive(Common),
    /// Minimal-norm decomposition of a point.
    Decompose {
        #[command(flatten)]
        common: Common,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Minimal-norm common point of translated cones.
    Intersect {
        #[command(flatten)]
        common: Common,
        /// One translation per cone, `a,b;c,d`. Defaults to the first tuple
        /// of the problem file.
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
    },
    /// Gauge and seminorm of a point or tuple.
    Gauge {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        form: FormArg,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
    },
    /// Continuity audit of the homogeneous selection on a sphere mesh.
    AuditSelection {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        form: FormArg,
        /// Defaults to `--samples`.
        #[arg(long = "mesh-size")]
        mesh_size: Option<usize>,
        #[arg(long = "alpha-hat")]
        alpha_hat: Option<f64>,
    },
    /// Difference quotients of the selection over random pairs.
    ProbeLipschitz {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        form: FormArg,
        /// Defaults to `--samples`.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long = "known-constant")]
        known_constant: Option<f64>,
    },
    /// Openness constant of the associated map.
    Beta {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        form: FormArg,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::CheckConormal(c)
            | Command::CheckCoadditive(c)
            | Command::AlphaConormal(c)
            | Command::AlphaCoadditive(c) => c,
            Command::Decompose { common, .. }
            | Command::Intersect { common, .. }
            | Command::Gauge { common, .. }
            | Command::AuditSelection { common, .. }
            | Command::ProbeLipschitz { common, .. }
            | Command::Beta { common, .. } => common,
        }
    }
}

const DEFAULT_SAMPLES: usize = 1000;
const DEFAULT_SEED: u64 = 0;

struct Context {
    problem: Problem,
    tol: Tolerance,
    mode: AlphaMode,
    samples: usize,
    seed: u64,
}

impl Context {
    fn family(&self) -> &ConeFamily {
        &self.problem.family
    }

    fn instance(&self, form: &FormArg) -> Result<PsiInstance> {
        let f = PsiForm::parse(&form.form)
            .ok_or_else(|| Error::Input(format!("unknown form '{}', expected delta or upsilon", form.form)))?;
        PsiInstance::new(f, self.problem.family.clone(), self.problem.norm.clone())
    }
}

struct Outcome {
    status: RunStatus,
    verdict: Option<bool>,
    quantities: Vec<Quantity>,
    certificates: Value,
}

impl Outcome {
    fn ok(quantities: Vec<Quantity>, certificates: Value) -> Self {
        Outcome {
            status: RunStatus::Ok,
            verdict: None,
            quantities,
            certificates,
        }
    }

    fn verdict(v: bool, quantities: Vec<Quantity>, certificates: Value) -> Self {
        Outcome {
            status: if v { RunStatus::Ok } else { RunStatus::Negative },
            verdict: Some(v),
            quantities,
            certificates,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn ensure(valid: bool, what: &str) -> Result<()> {
    if valid {
        Ok(())
    } else {
        Err(Error::Solver(format!("{what} failed re-validation")))
    }
}

fn flatten(vs: &[Vector]) -> Vec<f64> {
    vs.iter().flat_map(|v| v.iter().copied()).collect()
}

fn mode_name(mode: AlphaMode) -> String {
    match to_value(&mode) {
        Value::String(s) => s,
        _ => unreachable!("mode serializes to a string"),
    }
}

fn alpha_quantities(a: &AlphaResult) -> Vec<Quantity> {
    vec![
        Quantity::new("alpha", a.alpha)
            .with_mode(mode_name(a.mode))
            .with_witness(flatten(&a.witness)),
        Quantity::new("samples", a.samples as f64),
    ]
}

/// Runs the CLI on `argv` (including the program name) and returns the exit
/// code.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let echo: Vec<String> = argv
        .iter()
        .skip(1)
        .map(|s| s.to_string_lossy().into_owned())
        .collect();
    match run(cli, echo) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn context(common: &Common) -> Result<(Context, Format)> {
    let format = Format::parse(&common.format)?;
    let problem = parse_problem(&common.problem)?;
    let from_file = problem.file.tolerance()?;
    let tol = Tolerance {
        feas_tol: common.tol.unwrap_or(from_file.feas_tol),
        mem_tol: common.mem_tol.unwrap_or(from_file.mem_tol),
        gap_tol: common.gap_tol.unwrap_or(from_file.gap_tol),
    };
    tol.validate()?;
    let mode = match common.mode.as_deref().or(problem.file.analysis.mode.as_deref()) {
        Some(m) => AlphaMode::parse(m)
            .ok_or_else(|| Error::Input(format!("unknown mode '{m}', expected exact or sample")))?,
        None if problem.norm.is_polyhedral() => AlphaMode::ExactVertex,
        None => AlphaMode::SampledLowerBound,
    };
    let samples = common
        .samples
        .or(problem.file.analysis.samples)
        .unwrap_or(DEFAULT_SAMPLES);
    let seed = common.seed.or(problem.file.analysis.seed).unwrap_or(DEFAULT_SEED);
    Ok((
        Context {
            problem,
            tol,
            mode,
            samples,
            seed,
        },
        format,
    ))
}

fn run(cli: Cli, echo: Vec<String>) -> Result<i32> {
    let start = Instant::now();
    let common = cli.command.common().clone();
    let (ctx, format) = context(&common)?;
    let outcome = dispatch(&cli.command, &ctx);
    let (outcome, error, code) = match outcome {
        Ok(o) => {
            let code = if o.status == RunStatus::Negative { 1 } else { 0 };
            (o, None, code)
        }
        Err(e) if e.exit_code() == 2 => return Err(e),
        Err(e) => {
            let status = if e.exit_code() == 1 {
                RunStatus::Negative
            } else {
                RunStatus::Error
            };
            eprintln!("error: {e}");
            let o = Outcome {
                status,
                verdict: None,
                quantities: Vec::new(),
                certificates: Value::Null,
            };
            (o, Some(e.to_string()), e.exit_code())
        }
    };
    let report = RunReport {
        toolkit: TOOLKIT.to_string(),
        command: echo,
        input_digest: ctx.problem.digest.clone(),
        parameters: Parameters {
            mode: mode_name(ctx.mode),
            samples: ctx.samples,
            seed: ctx.seed,
            tolerance: ctx.tol,
        },
        status: outcome.status,
        verdict: outcome.verdict,
        quantities: outcome.quantities,
        certificates: outcome.certificates,
        error,
        timing: Some(Timing {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        }),
    };
    emit_report(&report, format, common.out.as_deref())?;
    Ok(code)
}

fn dispatch(cmd: &Command, ctx: &Context) -> Result<Outcome> {
    let family = ctx.family();
    let norm = &ctx.problem.norm;
    let tol = &ctx.tol;
    match cmd {
        Command::CheckConormal(_) => {
            let r = is_generating(family, tol)?;
            ensure(r.validate(family, tol), "generating certificate")?;
            let q = vec![
                Quantity::new("generating", f64::from(u8::from(r.generating))),
                Quantity::new("certificates", r.certificates.len() as f64),
            ];
            Ok(Outcome::verdict(r.generating, q, to_value(&r)))
        }
        Command::CheckCoadditive(_) => {
            let r = is_coadditive(family, tol)?;
            ensure(r.validate(family, tol), "coadditivity certificate")?;
            let q = vec![
                Quantity::new("coadditive", f64::from(u8::from(r.coadditive))),
                Quantity::new("certificates", r.certificates.len() as f64),
            ];
            Ok(Outcome::verdict(r.coadditive, q, to_value(&r)))
        }
        Command::AlphaConormal(_) => {
            let g = is_generating(family, tol)?;
            ensure(g.validate(family, tol), "generating certificate")?;
            if !g.generating {
                return Ok(Outcome::verdict(false, Vec::new(), json!({ "generating": g })));
            }
            let a = alpha_conormal(family, norm, ctx.mode, ctx.samples, ctx.seed, tol)?;
            let d = decompose_min(family, norm, &a.witness[0], tol)?;
            ensure(d.validate(family, &a.witness[0], tol), "witness decomposition")?;
            Ok(Outcome::ok(
                alpha_quantities(&a),
                json!({ "alpha": a, "witness_decomposition": d }),
            ))
        }
        Command::AlphaCoadditive(_) => {
            let c = is_coadditive(family, tol)?;
            ensure(c.validate(family, tol), "coadditivity certificate")?;
            if !c.coadditive {
                return Ok(Outcome::verdict(false, Vec::new(), json!({ "coadditive": c })));
            }
            let a = alpha_coadditive(family, norm, ctx.mode, ctx.samples, ctx.seed, tol)?;
            let xi = TranslationTuple::new(a.witness.clone())?;
            let p = intersect_min(family, norm, &xi, tol)?;
            ensure(p.validate(family, &xi, tol), "witness intersection point")?;
            Ok(Outcome::ok(
                alpha_quantities(&a),
                json!({ "alpha": a, "witness_intersection": p }),
            ))
        }
        Command::Decompose { point, .. } => {
            let x = parse_point(point)?;
            family.check_dim(&x)?;
            match decompose_min(family, norm, &x, tol) {
                Ok(d) => {
                    ensure(d.validate(family, &x, tol), "decomposition")?;
                    let q = vec![Quantity::new("value", d.value).with_witness(flatten(&d.parts))];
                    Ok(Outcome::ok(q, to_value(&d)))
                }
                Err(Error::NotDecomposable { .. }) => {
                    let gens = family
                        .cones
                        .iter()
                        .flat_map(|c| c.generators.iter().cloned())
                        .collect();
                    let sum = PolyhedralCone::new("sum", gens)?;
                    let m = cone_membership(&sum, &x, tol)?;
                    ensure(!m.member && m.validate(&sum, &x, tol), "separator")?;
                    Ok(Outcome::verdict(false, Vec::new(), json!({ "not_decomposable": m })))
                }
                Err(e) => Err(e),
            }
        }
        Command::Intersect { xi, .. } => {
            let xi = match xi {
                Some(s) => parse_translation(family, s)?,
                None => ctx.problem.translations.first().cloned().ok_or_else(|| {
                    Error::Input("no --xi given and the problem file has no translations".into())
                })?,
            };
            match intersect_min(family, norm, &xi, tol) {
                Ok(p) => {
                    ensure(p.validate(family, &xi, tol), "intersection point")?;
                    let q = vec![Quantity::new("norm", p.norm).with_witness(p.y.as_slice().to_vec())];
                    Ok(Outcome::ok(q, to_value(&p)))
                }
                Err(Error::EmptyIntersection { certificate, .. }) => {
                    let sep = IntersectionSeparator {
                        functionals: certificate
                            .into_iter()
                            .map(Vector::new)
                            .collect::<Result<_>>()?,
                    };
                    ensure(sep.validate(family, &xi, tol), "intersection separator")?;
                    Ok(Outcome::verdict(false, Vec::new(), json!({ "empty_intersection": sep })))
                }
                Err(e) => Err(e),
            }
        }
        Command::Gauge { form, point, xi, .. } => {
            let inst = ctx.instance(form)?;
            let y = match (inst.form, point, xi) {
                (PsiForm::Delta, Some(p), _) => parse_point(p)?,
                (PsiForm::Upsilon, _, Some(s)) => {
                    PsiInstance::query_from_tuple(&parse_translation(family, s)?)
                }
                (PsiForm::Delta, None, _) => return Err(Error::Input("--point is required".into())),
                (PsiForm::Upsilon, _, None) => return Err(Error::Input("--xi is required".into())),
            };
            let rho = inst.rho(&y, tol)?;
            let q = seminorm_q(&inst, &y, tol)?;
            let mut quantities = Vec::new();
            if let Gauge::Finite(v) = rho {
                quantities.push(Quantity::new("rho", v));
            }
            if let Gauge::Finite(v) = q {
                quantities.push(Quantity::new("q", v));
            }
            let certificates = match rho {
                Gauge::Finite(_) => {
                    let s = inst.select(&y, tol)?;
                    ensure(inst.certifies(&y, &s, tol)?, "fiber element")?;
                    json!({ "rho": rho, "q": q, "selection": s })
                }
                Gauge::Infeasible => json!({ "rho": rho, "q": q }),
            };
            let status = match rho {
                Gauge::Finite(_) => RunStatus::Ok,
                Gauge::Infeasible => RunStatus::Negative,
            };
            Ok(Outcome {
                status,
                verdict: None,
                quantities,
                certificates,
            })
        }
        Command::AuditSelection {
            form,
            mesh_size,
            alpha_hat,
            ..
        } => {
            let inst = ctx.instance(form)?;
            let r = continuity_audit(&inst, mesh_size.unwrap_or(ctx.samples), ctx.seed, *alpha_hat, tol)?;
            let mut q = vec![
                Quantity::new("alpha_hat", r.alpha_hat),
                Quantity::new("max_local_lipschitz", r.max_local_lipschitz),
                Quantity::new("max_reconstruction_error", r.max_reconstruction_error),
                Quantity::new("max_bound_violation", r.max_bound_violation),
            ];
            for m in &r.modulus {
                q.push(Quantity::new("modulus", m.modulus).with_witness(vec![m.step]));
            }
            Ok(Outcome::ok(q, to_value(&r)))
        }
        Command::ProbeLipschitz {
            form,
            trials,
            known_constant,
            ..
        } => {
            let inst = ctx.instance(form)?;
            let r = lipschitz_probe(&inst, trials.unwrap_or(ctx.samples), ctx.seed, *known_constant, tol)?;
            let mut q = Vec::new();
            if let Some(s) = &r.stats {
                for (name, v) in [
                    ("quotient_min", s.min),
                    ("quotient_median", s.median),
                    ("quotient_p90", s.p90),
                    ("quotient_p99", s.p99),
                    ("quotient_max", s.max),
                ] {
                    q.push(Quantity::new(name, v));
                }
            }
            let mut o = Outcome::ok(q, to_value(&r));
            if let Some(v) = r.verdict {
                o.verdict = Some(v);
                if !v {
                    o.status = RunStatus::Negative;
                }
            }
            Ok(o)
        }
        Command::Beta { form, .. } => {
            let inst = ctx.instance(form)?;
            let b = beta_openness(&inst, ctx.mode, ctx.samples, ctx.seed, tol)?;
            let mode = mode_name(b.mode);
            let mut q = vec![Quantity::new("alpha", b.alpha)
                .with_mode(mode.clone())
                .with_witness(flatten(&b.witness))];
            if let (Some(beta), Some(p)) = (b.beta, b.alpha_times_beta) {
                q.push(Quantity::new("beta", beta).with_mode(mode));
                q.push(Quantity::new("alpha_times_beta", p));
            }
            Ok(Outcome::ok(q, to_value(&b)))
        }
    }
}
