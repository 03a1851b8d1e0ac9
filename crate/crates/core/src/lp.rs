//! Dense tableau simplex for small equality-form LPs
//!
//!   minimize c·v  subject to  A·v = b,  v ≥ 0
//!
//! started from a caller-supplied identity basis. Bland's rule is used for
//! both the entering and the leaving variable, so the method cannot cycle.

use log::{debug, trace};

use crate::error::{Error, Result};

/// Pivot and reduced-cost tolerance.
pub const PIVOT_TOL: f64 = 1e-9;

/// An LP optimum at or below this value counts as zero.
pub const ZERO_OBJECTIVE_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct StandardLp {
    /// Row-major `n_rows × n_vars`.
    pub constraint_matrix: Vec<Vec<f64>>,
    pub rhs: Vec<f64>,
    pub objective: Vec<f64>,
    pub nonneg_mask: Vec<bool>,
    /// One column per row; together they must form an identity matrix.
    pub initial_basis: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub objective_value: f64,
    pub values: Vec<f64>,
    pub basis: Vec<usize>,
    pub pivots: usize,
}

impl StandardLp {
    pub fn n_rows(&self) -> usize {
        self.rhs.len()
    }

    pub fn n_vars(&self) -> usize {
        self.objective.len()
    }

    fn check(&self) -> Result<()> {
        let (m, n) = (self.n_rows(), self.n_vars());
        if self.constraint_matrix.len() != m {
            return Err(Error::InvalidLp(format!(
                "{} constraint rows but {m} right-hand sides",
                self.constraint_matrix.len()
            )));
        }
        if let Some(row) = self.constraint_matrix.iter().position(|r| r.len() != n) {
            return Err(Error::InvalidLp(format!("row {row} does not have {n} coefficients")));
        }
        if self.nonneg_mask.len() != n {
            return Err(Error::InvalidLp(
                "nonneg_mask length differs from variable count".into(),
            ));
        }
        if self.nonneg_mask.iter().any(|&nn| !nn) {
            return Err(Error::InvalidLp("free variables are not supported".into()));
        }
        if let Some(i) = self.rhs.iter().position(|&b| b.is_nan() || b < 0.0) {
            return Err(Error::InvalidLp(format!("rhs[{i}] = {} is negative", self.rhs[i])));
        }
        if self.initial_basis.len() != m {
            return Err(Error::SingularBasis);
        }
        for (row, &col) in self.initial_basis.iter().enumerate() {
            if col >= n {
                return Err(Error::SingularBasis);
            }
            for (r, coeffs) in self.constraint_matrix.iter().enumerate() {
                let expected = if r == row { 1.0 } else { 0.0 };
                if coeffs[col] != expected {
                    return Err(Error::SingularBasis);
                }
            }
        }
        Ok(())
    }

    /// Largest violation of `A·v = b`.
    pub fn residual(&self, values: &[f64]) -> f64 {
        self.constraint_matrix
            .iter()
            .zip(&self.rhs)
            .map(|(row, b)| (row.iter().zip(values).map(|(a, v)| a * v).sum::<f64>() - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Solves `lp` from its initial basis.
pub fn solve(lp: &StandardLp) -> Result<LpSolution> {
    lp.check()?;
    let n = lp.n_vars();

    // Tableau rows are [A | b]; the initial basis is an identity so no
    // elimination is needed to put it in canonical form.
    let mut tableau: Vec<Vec<f64>> = lp
        .constraint_matrix
        .iter()
        .zip(&lp.rhs)
        .map(|(row, &b)| {
            let mut r = row.clone();
            r.push(b);
            r
        })
        .collect();
    let mut basis = lp.initial_basis.clone();
    let mut is_basic = vec![false; n];
    for &b in &basis {
        is_basic[b] = true;
    }

    // Bland's rule terminates in at most C(n, m) pivots.
    let max_pivots = 50_000;
    let mut pivots = 0;
    loop {
        let reduced: Vec<f64> = (0..n)
            .map(|j| {
                lp.objective[j]
                    - basis
                        .iter()
                        .zip(&tableau)
                        .map(|(&b, row)| lp.objective[b] * row[j])
                        .sum::<f64>()
            })
            .collect();
        if log::log_enabled!(log::Level::Trace) {
            trace!("pivot {pivots}: basis {basis:?}");
            for row in &tableau {
                trace!("  {}", format_row(row));
            }
            trace!("  reduced costs: {}", format_row(&reduced));
        }

        let Some(entering) = (0..n).find(|&j| !is_basic[j] && reduced[j] < -PIVOT_TOL) else {
            break;
        };

        let mut leaving: Option<(usize, f64)> = None;
        for (i, row) in tableau.iter().enumerate() {
            let a = row[entering];
            if a <= PIVOT_TOL {
                continue;
            }
            let ratio = row[n] / a;
            leaving = match leaving {
                None => Some((i, ratio)),
                Some((best, best_ratio)) => {
                    let tie = (ratio - best_ratio).abs() <= PIVOT_TOL * (1.0 + best_ratio.abs());
                    if ratio < best_ratio && !tie || tie && basis[i] < basis[best] {
                        Some((i, ratio))
                    } else {
                        Some((best, best_ratio))
                    }
                }
            };
        }
        let Some((pivot_row, _)) = leaving else {
            debug!("column {entering} is an unbounded direction");
            return Ok(extract(lp, &tableau, basis, LpStatus::Unbounded, pivots));
        };

        pivot(&mut tableau, pivot_row, entering);
        is_basic[basis[pivot_row]] = false;
        is_basic[entering] = true;
        debug!("pivot {pivots}: x{entering} enters, x{} leaves", basis[pivot_row]);
        basis[pivot_row] = entering;
        pivots += 1;
        if pivots >= max_pivots {
            return Err(Error::PivotLimit(max_pivots));
        }
    }

    Ok(extract(lp, &tableau, basis, LpStatus::Optimal, pivots))
}

fn pivot(tableau: &mut [Vec<f64>], row: usize, col: usize) {
    let p = tableau[row][col];
    for v in tableau[row].iter_mut() {
        *v /= p;
    }
    tableau[row][col] = 1.0;
    let pivot_row = tableau[row].clone();
    for (i, r) in tableau.iter_mut().enumerate() {
        if i == row {
            continue;
        }
        let f = r[col];
        if f == 0.0 {
            continue;
        }
        for (v, pv) in r.iter_mut().zip(&pivot_row) {
            *v -= f * pv;
        }
        r[col] = 0.0;
    }
}

fn extract(lp: &StandardLp, tableau: &[Vec<f64>], basis: Vec<usize>, status: LpStatus, pivots: usize) -> LpSolution {
    let n = lp.n_vars();
    let mut values = vec![0.0; n];
    for (row, &b) in tableau.iter().zip(&basis) {
        let v = row[n];
        values[b] = if v.abs() <= PIVOT_TOL { 0.0 } else { v };
    }
    let objective_value = lp.objective.iter().zip(&values).map(|(c, v)| c * v).sum();
    LpSolution {
        status,
        objective_value,
        values,
        basis,
        pivots,
    }
}

fn format_row(row: &[f64]) -> String {
    row.iter().map(|v| format!("{v:9.4}")).collect::<Vec<_>>().join(" ")
}

/// Column layout of the pointedness LP for `t` generators in dimension `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointednessLayout {
    pub p: usize,
    pub t: usize,
}

impl PointednessLayout {
    pub fn d(&self, i: usize) -> usize {
        i
    }
    pub fn s(&self, j: usize) -> usize {
        self.p + j
    }
    pub fn r(&self, j: usize) -> usize {
        self.p + self.t + self.p + j
    }
    pub fn n_rows(&self) -> usize {
        self.t + self.p
    }
    pub fn n_vars(&self) -> usize {
        self.p + 2 * (self.t + self.p)
    }
}

/// Builds
///
/// ```text
/// min Σ r_j  s.t.  g_j·d − s_j + r_j = 1        (j < t)
///                  d_i − s_{t+i} + r_{t+i} = 1  (i < p)
///                  d, s, r ≥ 0
/// ```
///
/// with variables ordered `(d, s, r)` and the `r` columns as starting basis.
pub fn build_pointedness_lp(gens: &[Vec<f64>], p: usize) -> Result<StandardLp> {
    if gens.is_empty() {
        return Err(Error::InvalidLp("at least one generator is required".into()));
    }
    if let Some(g) = gens.iter().find(|g| g.len() != p) {
        return Err(Error::DimensionMismatch {
            expected: p,
            found: g.len(),
            context: "pointedness LP generator".into(),
        });
    }
    let layout = PointednessLayout { p, t: gens.len() };
    let (rows, vars) = (layout.n_rows(), layout.n_vars());
    let mut a = vec![vec![0.0; vars]; rows];
    for (j, g) in gens.iter().enumerate() {
        a[j][..p].copy_from_slice(g);
    }
    for i in 0..p {
        a[layout.t + i][layout.d(i)] = 1.0;
    }
    for (j, row) in a.iter_mut().enumerate() {
        row[layout.s(j)] = -1.0;
        row[layout.r(j)] = 1.0;
    }
    let mut objective = vec![0.0; vars];
    for j in 0..rows {
        objective[layout.r(j)] = 1.0;
    }
    Ok(StandardLp {
        constraint_matrix: a,
        rhs: vec![1.0; rows],
        objective,
        nonneg_mask: vec![true; vars],
        initial_basis: (0..rows).map(|j| layout.r(j)).collect(),
    })
}
