//! Dense two-phase primal simplex: Bland's rule picks the entering column,
//! a two-pass Harris ratio test with lowest-index ties picks the leaving row.
//!
//! Every conic query in the crate is reduced to an LP in the equality form
//!
//! ```text
//! minimize c·z  subject to  A z = b,  z_j ≥ 0 for j in the non-negative set
//! ```
//!
//! Free variables are split internally as `z = z⁺ − z⁻`. The solver is fully
//! deterministic: column order fixes the initial (artificial) basis and the
//! pivot rules involve no randomness, so identical programs yield identical
//! vertices and bases.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Tolerance;

const PIVOT_TOL: f64 = 1e-11;
const MIN_PIVOT: f64 = 1e-13;
const OPT_TOL: f64 = 1e-10;
const HARRIS_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    objective: Vec<f64>,
    equalities: Vec<(Vec<f64>, f64)>,
    nonneg: Vec<bool>,
}

impl LinearProgram {
    /// `nonneg[j]` marks `z_j ≥ 0`; the remaining variables are free.
    pub fn new(
        objective: Vec<f64>,
        equalities: Vec<(Vec<f64>, f64)>,
        nonneg: Vec<bool>,
    ) -> Result<Self> {
        let n = objective.len();
        if nonneg.len() != n {
            return Err(Error::Input(format!(
                "variable sign flags have length {}, expected {n}",
                nonneg.len()
            )));
        }
        for (k, (row, rhs)) in equalities.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Input(format!(
                    "equality row {k} has length {}, expected {n}",
                    row.len()
                )));
            }
            if !rhs.is_finite() || row.iter().any(|v| !v.is_finite()) {
                return Err(Error::Input(format!("equality row {k} has non-finite data")));
            }
        }
        if objective.iter().any(|v| !v.is_finite()) {
            return Err(Error::Input("objective has non-finite data".into()));
        }
        Ok(LinearProgram {
            objective,
            equalities,
            nonneg,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn objective(&self) -> &[f64] {
        &self.objective
    }

    pub fn equalities(&self) -> &[(Vec<f64>, f64)] {
        &self.equalities
    }

    pub fn nonneg_vars(&self) -> Vec<usize> {
        (0..self.num_vars()).filter(|&j| self.nonneg[j]).collect()
    }

    pub fn free_vars(&self) -> Vec<usize> {
        (0..self.num_vars()).filter(|&j| !self.nonneg[j]).collect()
    }

    pub fn is_nonneg(&self, j: usize) -> bool {
        self.nonneg[j]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub solution: Option<Vec<f64>>,
    pub value: Option<f64>,
    /// Final basic columns, row by row. Column `k` refers to the internal
    /// split form: variables in order, each free variable contributing a
    /// `z⁺` column followed by a `z⁻` column.
    pub basis: Option<Vec<usize>>,
    /// For infeasible programs: a Farkas multiplier `h` with `h·A_j ≥ 0` on
    /// non-negative columns, `h·A_j = 0` on free columns and `h·b < 0`.
    pub farkas: Option<Vec<f64>>,
}

/// Incremental sparse construction of a [`LinearProgram`].
#[derive(Debug, Default, Clone)]
pub struct LpBuilder {
    costs: Vec<f64>,
    nonneg: Vec<bool>,
    rows: Vec<(Vec<(usize, f64)>, f64)>,
}

impl LpBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_var(&mut self, nonneg: bool, cost: f64) -> usize {
        self.costs.push(cost);
        self.nonneg.push(nonneg);
        self.costs.len() - 1
    }

    pub fn add_row(&mut self, terms: Vec<(usize, f64)>, rhs: f64) -> usize {
        self.rows.push((terms, rhs));
        self.rows.len() - 1
    }

    pub fn num_vars(&self) -> usize {
        self.costs.len()
    }

    pub fn set_cost(&mut self, var: usize, cost: f64) {
        self.costs[var] = cost;
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn build(&self) -> Result<LinearProgram> {
        let n = self.costs.len();
        let equalities = self
            .rows
            .iter()
            .map(|(terms, rhs)| {
                let mut row = vec![0.0; n];
                for &(j, a) in terms {
                    row[j] += a;
                }
                (row, *rhs)
            })
            .collect();
        LinearProgram::new(self.costs.clone(), equalities, self.nonneg.clone())
    }
}

struct Tableau {
    rows: Vec<Vec<f64>>,
    /// Reduced costs; the last entry holds minus the objective value.
    cost: Vec<f64>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.width - 1
    }

    fn pivot(&mut self, r: usize, s: usize) -> Result<()> {
        let p = self.rows[r][s];
        if !p.is_finite() || p.abs() < MIN_PIVOT {
            return Err(Error::Solver(format!(
                "pivot magnitude {p:e} at row {r}, column {s} is below {MIN_PIVOT:e}"
            )));
        }
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        self.rows[r][s] = 1.0;
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            eliminate(row, &pivot_row, s);
        }
        eliminate(&mut self.cost, &pivot_row, s);
        self.basis[r] = s;
        Ok(())
    }

    /// Runs Bland-rule pivots over columns `< allowed`.
    /// Returns `Ok(Some(col))` if column `col` proves unboundedness.
    ///
    /// Entering column: lowest index with negative reduced cost. Leaving row:
    /// a Harris two-pass ratio test (ratios relaxed by `HARRIS_TOL`), keeping
    /// candidates whose pivot is within a factor 10 of the largest, then the
    /// lowest basic index among those.
    fn run(&mut self, allowed: usize, max_iter: usize, phase_one: bool) -> Result<Option<usize>> {
        let rhs = self.rhs();
        let mut skipped = vec![false; allowed];
        for _ in 0..max_iter {
            let Some(s) = (0..allowed).find(|&j| !skipped[j] && self.cost[j] < -OPT_TOL) else {
                return Ok(None);
            };
            let bound = self
                .rows
                .iter()
                .filter(|row| row[s] > PIVOT_TOL)
                .map(|row| (row[rhs].max(0.0) + HARRIS_TOL) / row[s])
                .fold(f64::INFINITY, f64::min);
            if bound.is_infinite() {
                if phase_one {
                    // phase one is bounded below; such a column is numerical noise
                    skipped[s] = true;
                    continue;
                }
                return Ok(Some(s));
            }
            let eligible: Vec<usize> = (0..self.rows.len())
                .filter(|&i| {
                    let a = self.rows[i][s];
                    a > PIVOT_TOL && self.rows[i][rhs].max(0.0) / a <= bound
                })
                .collect();
            let largest = eligible
                .iter()
                .map(|&i| self.rows[i][s])
                .fold(0.0_f64, f64::max);
            let r = eligible
                .into_iter()
                .filter(|&i| self.rows[i][s] >= 0.1 * largest)
                .min_by_key(|&i| self.basis[i])
                .expect("non-empty eligible set");
            self.pivot(r, s)?;
            skipped.iter_mut().for_each(|k| *k = false);
        }
        Err(Error::Solver(format!(
            "simplex iteration limit ({max_iter}) reached"
        )))
    }
}

fn eliminate(row: &mut [f64], pivot_row: &[f64], s: usize) {
    let f = row[s];
    if f == 0.0 {
        return;
    }
    for (v, p) in row.iter_mut().zip(pivot_row) {
        if *p != 0.0 {
            *v -= f * p;
            if v.abs() < 1e-15 {
                *v = 0.0;
            }
        }
    }
    row[s] = 0.0;
}

/// Solves `lp`. Phase one declares infeasibility when the minimal artificial
/// mass exceeds `feas_tol · (1 + ‖b‖_∞)`.
pub fn solve_lp(lp: &LinearProgram, tol: &Tolerance) -> Result<LpOutcome> {
    let n = lp.num_vars();
    // internal columns
    let mut col_var: Vec<(usize, f64)> = Vec::with_capacity(2 * n);
    for j in 0..n {
        col_var.push((j, 1.0));
        if !lp.nonneg[j] {
            col_var.push((j, -1.0));
        }
    }
    let ncols = col_var.len();
    let m = lp.equalities.len();
    let width = ncols + m + 1;
    let b_scale = lp
        .equalities
        .iter()
        .fold(0.0_f64, |acc, (_, b)| acc.max(b.abs()));

    let mut signs = Vec::with_capacity(m);
    let mut rows = Vec::with_capacity(m);
    for (i, (row, b)) in lp.equalities.iter().enumerate() {
        let sign = if *b < 0.0 { -1.0 } else { 1.0 };
        signs.push(sign);
        let mut t = vec![0.0; width];
        for (k, &(j, s)) in col_var.iter().enumerate() {
            t[k] = sign * s * row[j];
        }
        t[ncols + i] = 1.0;
        t[width - 1] = sign * b;
        rows.push(t);
    }
    let mut cost = vec![0.0; width];
    for row in &rows {
        for k in 0..ncols {
            cost[k] -= row[k];
        }
        cost[width - 1] -= row[width - 1];
    }
    let mut tab = Tableau {
        rows,
        cost,
        basis: (ncols..ncols + m).collect(),
        width,
    };
    let max_iter = 50_000 + 100 * (m + ncols);

    // phase one
    if tab.run(ncols + m, max_iter, true)?.is_some() {
        return Err(Error::Solver("phase one reported an unbounded ray".into()));
    }
    let infeasibility = -tab.cost[width - 1];
    if infeasibility > tol.feas_tol * (1.0 + b_scale) {
        let farkas = (0..m)
            .map(|i| -signs[i] * (1.0 - tab.cost[ncols + i]))
            .collect();
        return Ok(LpOutcome {
            status: LpStatus::Infeasible,
            solution: None,
            value: None,
            basis: None,
            farkas: Some(farkas),
        });
    }

    // drive remaining artificials out of the basis; drop redundant rows
    let mut r = 0;
    while r < tab.rows.len() {
        if tab.basis[r] >= ncols {
            match (0..ncols).find(|&k| tab.rows[r][k].abs() > PIVOT_TOL) {
                Some(k) => tab.pivot(r, k)?,
                None => {
                    tab.rows.remove(r);
                    tab.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    // phase two
    let col_cost: Vec<f64> = col_var.iter().map(|&(j, s)| s * lp.objective[j]).collect();
    let mut cost = vec![0.0; width];
    cost[..ncols].copy_from_slice(&col_cost);
    for (row, &bv) in tab.rows.iter().zip(&tab.basis) {
        let cb = col_cost[bv];
        if cb != 0.0 {
            for k in 0..width {
                if k < ncols || k == width - 1 {
                    cost[k] -= cb * row[k];
                }
            }
        }
    }
    tab.cost = cost;
    if tab.run(ncols, max_iter, false)?.is_some() {
        return Ok(LpOutcome {
            status: LpStatus::Unbounded,
            solution: None,
            value: None,
            basis: None,
            farkas: None,
        });
    }

    let mut internal = vec![0.0; ncols];
    for (row, &bv) in tab.rows.iter().zip(&tab.basis) {
        internal[bv] = row[width - 1].max(0.0);
    }
    let mut solution = vec![0.0; n];
    for (k, &(j, s)) in col_var.iter().enumerate() {
        solution[j] += s * internal[k];
    }
    let value = -tab.cost[width - 1];
    if !value.is_finite() || solution.iter().any(|v| !v.is_finite()) {
        return Err(Error::Solver("non-finite optimal solution".into()));
    }
    Ok(LpOutcome {
        status: LpStatus::Optimal,
        solution: Some(solution),
        value: Some(value),
        basis: Some(tab.basis),
        farkas: None,
    })
}
