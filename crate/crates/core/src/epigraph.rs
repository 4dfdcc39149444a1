//! LP encodings of `min Σ_k ‖E_k z‖` for linear expressions `E_k z`.
//!
//! Polyhedral norms are encoded exactly: `l1` and vertex-listed balls as
//! `E z = Σ_j μ_j v_j`, `μ ≥ 0`, cost `Σ μ_j` (gauge of the vertex hull);
//! `linf` through the two-sided epigraph `t ≥ ±w_i (E z)_i`. The Euclidean
//! norm is handled by Kelley's cutting-plane method: `t ≥ u·E z` for a growing
//! set of unit directions `u`, refined at the current iterate until the
//! summed epigraph gap falls below `gap_tol`.

use crate::error::{Error, Result};
use crate::geometry::{ball_vertices, dot, NormSpec, Tolerance};
use crate::lp::{solve_lp, LpBuilder, LpStatus};

const MAX_CUT_ROUNDS: usize = 500;

/// A linear expression with values in `R^n`: one sparse row per coordinate.
pub(crate) type LinExpr = Vec<Vec<(usize, f64)>>;

pub(crate) enum NormedSolve {
    Optimal {
        solution: Vec<f64>,
        /// Optimal objective, including the norm terms.
        value: f64,
    },
    Infeasible,
}

/// Minimizes `Σ_k ‖exprs[k]‖` (plus the builder's own costs) over the
/// constraints already held by `base`. Variables of `base` keep their indices.
pub(crate) fn minimize_norms(
    base: &LpBuilder,
    exprs: &[LinExpr],
    norm: &NormSpec,
    dim: usize,
    tol: &Tolerance,
) -> Result<NormedSolve> {
    match norm {
        NormSpec::L2 => minimize_l2(base, exprs, dim, tol),
        _ => {
            let mut lp = base.clone();
            let vertices = match norm {
                NormSpec::Linf { .. } => None,
                _ => Some(ball_vertices(norm, dim)?),
            };
            for expr in exprs {
                match &vertices {
                    Some(verts) => add_vertex_gauge(&mut lp, expr, verts),
                    None => add_linf(&mut lp, expr, norm),
                }
            }
            let out = solve_lp(&lp.build()?, tol)?;
            match out.status {
                LpStatus::Optimal => {
                    let mut solution = out.solution.unwrap_or_default();
                    solution.truncate(base.num_vars());
                    Ok(NormedSolve::Optimal {
                        solution,
                        value: out.value.unwrap_or(0.0),
                    })
                }
                LpStatus::Infeasible => Ok(NormedSolve::Infeasible),
                LpStatus::Unbounded => {
                    Err(Error::Solver("norm minimization reported unbounded".into()))
                }
            }
        }
    }
}

fn add_vertex_gauge(lp: &mut LpBuilder, expr: &LinExpr, vertices: &[crate::geometry::Vector]) {
    let mus: Vec<usize> = vertices.iter().map(|_| lp.add_var(true, 1.0)).collect();
    for (i, coord) in expr.iter().enumerate() {
        let mut terms = coord.clone();
        for (v, &mu) in vertices.iter().zip(&mus) {
            if v[i] != 0.0 {
                terms.push((mu, -v[i]));
            }
        }
        lp.add_row(terms, 0.0);
    }
}

fn add_linf(lp: &mut LpBuilder, expr: &LinExpr, norm: &NormSpec) {
    let weights = match norm {
        NormSpec::Linf { weights: Some(w) } => w.clone(),
        _ => vec![1.0; expr.len()],
    };
    let t = lp.add_var(true, 1.0);
    for (i, coord) in expr.iter().enumerate() {
        for sign in [1.0, -1.0] {
            let s = lp.add_var(true, 0.0);
            let mut terms = vec![(t, 1.0), (s, -1.0)];
            terms.extend(coord.iter().map(|&(j, a)| (j, -sign * weights[i] * a)));
            lp.add_row(terms, 0.0);
        }
    }
}

fn eval_expr(expr: &LinExpr, z: &[f64]) -> Vec<f64> {
    expr.iter()
        .map(|coord| coord.iter().map(|&(j, a)| a * z[j]).sum())
        .collect()
}

fn initial_cuts(expr: &LinExpr, dim: usize) -> Vec<Vec<f64>> {
    let mut cuts = Vec::with_capacity(2 * dim);
    for i in 0..dim {
        for s in [1.0, -1.0] {
            let mut u = vec![0.0; dim];
            u[i] = s;
            cuts.push(u);
        }
    }
    // single-variable expressions are rays; their direction is an exact cut
    let vars: Vec<usize> = {
        let mut v: Vec<usize> = expr.iter().flatten().map(|&(j, _)| j).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    for j in vars {
        let dir: Vec<f64> = expr
            .iter()
            .map(|coord| coord.iter().filter(|t| t.0 == j).map(|t| t.1).sum())
            .collect();
        let n = dot(&dir, &dir).sqrt();
        if n > 0.0 {
            cuts.push(dir.iter().map(|d| d / n).collect());
        }
    }
    cuts
}

fn minimize_l2(
    base: &LpBuilder,
    exprs: &[LinExpr],
    dim: usize,
    tol: &Tolerance,
) -> Result<NormedSolve> {
    let mut cuts: Vec<Vec<Vec<f64>>> = exprs.iter().map(|e| initial_cuts(e, dim)).collect();
    let base_costs_len = base.num_vars();
    for _ in 0..MAX_CUT_ROUNDS {
        let mut lp = base.clone();
        let mut epis = Vec::with_capacity(exprs.len());
        for (expr, set) in exprs.iter().zip(&cuts) {
            let t = lp.add_var(true, 1.0);
            epis.push(t);
            for u in set {
                let s = lp.add_var(true, 0.0);
                let mut terms = vec![(t, 1.0), (s, -1.0)];
                for (i, coord) in expr.iter().enumerate() {
                    if u[i] != 0.0 {
                        terms.extend(coord.iter().map(|&(j, a)| (j, -u[i] * a)));
                    }
                }
                lp.add_row(terms, 0.0);
            }
        }
        let out = solve_lp(&lp.build()?, tol)?;
        let solution = match out.status {
            LpStatus::Optimal => out.solution.unwrap_or_default(),
            LpStatus::Infeasible => {
                return Ok(NormedSolve::Infeasible)
            }
            LpStatus::Unbounded => {
                return Err(Error::Solver("cutting-plane LP reported unbounded".into()))
            }
        };
        let lower = out.value.unwrap_or(0.0);
        let mut gap = 0.0;
        let mut true_value = lower;
        let mut new_cuts = Vec::new();
        for (k, expr) in exprs.iter().enumerate() {
            let c = eval_expr(expr, &solution);
            let n = dot(&c, &c).sqrt();
            let t = solution[epis[k]];
            true_value += n - t;
            if n - t > 0.0 {
                gap += n - t;
            }
            if n > 0.0 && n - t > 0.1 * tol.gap_tol {
                new_cuts.push((k, c.iter().map(|v| v / n).collect::<Vec<f64>>()));
            }
        }
        if gap < tol.gap_tol * true_value.abs().max(1.0) || new_cuts.is_empty() {
            let mut trimmed = solution;
            trimmed.truncate(base_costs_len);
            return Ok(NormedSolve::Optimal {
                solution: trimmed,
                value: true_value,
            });
        }
        for (k, u) in new_cuts {
            cuts[k].push(u);
        }
    }
    Err(Error::Solver(format!(
        "euclidean cutting-plane loop did not reach gap {} in {MAX_CUT_ROUNDS} rounds",
        tol.gap_tol
    )))
}
