//! Dense two-phase simplex with Bland's rule.
//!
//! Solves `min c·z` subject to `A z = b`, `z ≥ 0`. Sizes here are a few
//! dozen variables, so a full tableau is the simplest robust choice.

use alloc::vec;
use alloc::vec::Vec;


const PIVOT_TOL: f64 = 1e-11;
const MAX_PIVOTS: usize = 50_000;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { z: Vec<f64>, value: f64 },
    /// Phase one could not drive the artificial variables below the
    /// tolerance; `residual` is the smallest L1 constraint violation found.
    Infeasible { residual: f64 },
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<f64> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(*value),
            _ => None,
        }
    }
}

/// Standard-form linear program.
#[derive(Debug, Clone, Default)]
pub struct Lp {
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
    pub c: Vec<f64>,
}

impl Lp {
    pub fn new(vars: usize) -> Self {
        Self { a: Vec::new(), b: Vec::new(), c: vec![0.0; vars] }
    }

    pub fn vars(&self) -> usize {
        self.c.len()
    }

    pub fn add_row(&mut self, row: Vec<f64>, rhs: f64) {
        debug_assert_eq!(row.len(), self.c.len());
        self.a.push(row);
        self.b.push(rhs);
    }

    /// Solves with feasibility tolerance `tol` on the phase-one objective.
    pub fn solve(&self, tol: f64) -> LpOutcome {
        let m = self.a.len();
        let n = self.c.len();
        // Columns: n originals, m artificials, then the rhs.
        let width = n + m + 1;
        let mut t = vec![vec![0.0; width]; m + 1];
        for i in 0..m {
            let flip = if self.b[i] < 0.0 { -1.0 } else { 1.0 };
            for j in 0..n {
                t[i][j] = flip * self.a[i][j];
            }
            t[i][n + i] = 1.0;
            t[i][width - 1] = flip * self.b[i];
        }
        let mut basis: Vec<usize> = (n..n + m).collect();

        // Phase one: minimize the sum of artificials.
        let obj = m;
        for j in 0..width {
            t[obj][j] = 0.0;
        }
        for i in 0..m {
            for j in 0..n {
                t[obj][j] -= t[i][j];
            }
            t[obj][width - 1] -= t[i][width - 1];
        }
        // The phase-one objective is bounded below by zero, so an improving
        // column without a positive entry is roundoff and is skipped.
        let _ = run(&mut t, &mut basis, n + m, true);
        let residual = -t[obj][width - 1];
        if residual > tol {
            return LpOutcome::Infeasible { residual };
        }

        // Drive remaining artificials out of the basis where possible.
        for i in 0..m {
            if basis[i] >= n {
                if let Some(j) = (0..n).find(|&j| t[i][j].abs() > PIVOT_TOL) {
                    pivot(&mut t, &mut basis, i, j);
                }
            }
        }

        // Phase two on the original columns only.
        for j in 0..width {
            t[obj][j] = 0.0;
        }
        for j in 0..n {
            t[obj][j] = self.c[j];
        }
        for i in 0..m {
            let bj = basis[i];
            if bj < n && self.c[bj] != 0.0 {
                let f = self.c[bj];
                for j in 0..width {
                    t[obj][j] -= f * t[i][j];
                }
            }
        }
        // Artificials stuck in the basis sit on redundant rows at zero; keep
        // them out of the entering set.
        if run(&mut t, &mut basis, n, false).is_err() {
            return LpOutcome::Unbounded;
        }
        let mut z = vec![0.0; n];
        for i in 0..m {
            if basis[i] < n {
                z[basis[i]] = t[i][width - 1];
            }
        }
        let value = self.c.iter().zip(&z).map(|(c, z)| c * z).sum();
        LpOutcome::Optimal { z, value }
    }
}

struct UnboundedErr;

/// Bland's-rule simplex on the tableau; entering columns are `< limit`.
/// With `bounded`, columns that cannot pivot are never chosen to enter.
fn run(t: &mut [Vec<f64>], basis: &mut [usize], limit: usize, bounded: bool) -> Result<(), UnboundedErr> {
    let m = basis.len();
    let width = t[0].len();
    let can_pivot = |t: &[Vec<f64>], j: usize| (0..m).any(|i| t[i][j] > PIVOT_TOL);
    for _ in 0..MAX_PIVOTS {
        let Some(enter) = (0..limit).find(|&j| t[m][j] < -PIVOT_TOL && (!bounded || can_pivot(t, j))) else {
            return Ok(());
        };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let a = t[i][enter];
            if a > PIVOT_TOL {
                let ratio = t[i][width - 1] / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < lr - 1e-12 || (ratio <= lr + 1e-12 && basis[i] < basis[li]) {
                            Some((i, ratio))
                        } else {
                            Some((li, lr))
                        }
                    }
                };
            }
        }
        let Some((row, _)) = leave else {
            return Err(UnboundedErr);
        };
        pivot(t, basis, row, enter);
    }
    Ok(())
}

fn pivot(t: &mut [Vec<f64>], basis: &mut [usize], row: usize, col: usize) {
    let width = t[0].len();
    let p = t[row][col];
    for j in 0..width {
        t[row][j] /= p;
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row {
            continue;
        }
        let f = r[col];
        if f != 0.0 {
            for j in 0..width {
                r[j] -= f * pivot_row[j];
            }
            r[col] = 0.0;
        }
    }
    basis[row] = col;
}
