//! Dense linear programs, optionally with second-order cone rows, backed by
//! the Clarabel interior point solver.
//!
//! Problems here are small (at most a few hundred rows and columns), so rows
//! are collected densely and converted to CSC once at solve time.

use clarabel::algebra::CscMatrix;
use clarabel::solver::{
    DefaultSettingsBuilder, DefaultSolver, IPSolver, NonnegativeConeT, SecondOrderConeT, SolverStatus,
    ZeroConeT,
};

use crate::error::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// Outcome of a successful solve.
#[derive(Debug, Clone)]
pub struct LpSolution {
    pub x: Vec<f64>,
    /// Objective value in the problem's own sense.
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpFailure {
    Infeasible,
    Unbounded,
    Numerical(String),
}

impl From<LpFailure> for Error {
    fn from(f: LpFailure) -> Self {
        Error::Lp(match f {
            LpFailure::Infeasible => "infeasible".to_string(),
            LpFailure::Unbounded => "unbounded".to_string(),
            LpFailure::Numerical(s) => s,
        })
    }
}

/// `optimize c·x` subject to dense equality and `≤` rows. Variables are free
/// unless bounded through explicit rows (see [`LinearProgram::nonneg`]).
#[derive(Debug, Clone)]
pub struct LinearProgram {
    ncols: usize,
    sense: Sense,
    objective: Vec<f64>,
    eq_rows: Vec<Vec<f64>>,
    eq_rhs: Vec<f64>,
    le_rows: Vec<Vec<f64>>,
    le_rhs: Vec<f64>,
    soc_blocks: Vec<(Vec<Vec<f64>>, Vec<f64>)>,
    tolerance: f64,
}

impl LinearProgram {
    pub fn new(ncols: usize, sense: Sense, objective: Vec<f64>) -> Self {
        assert_eq!(objective.len(), ncols);
        LinearProgram {
            ncols,
            sense,
            objective,
            eq_rows: Vec::new(),
            eq_rhs: Vec::new(),
            le_rows: Vec::new(),
            le_rhs: Vec::new(),
            soc_blocks: Vec::new(),
            tolerance: 1e-10,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self
    }

    pub fn add_le(&mut self, row: Vec<f64>, rhs: f64) {
        assert_eq!(row.len(), self.ncols);
        self.le_rows.push(row);
        self.le_rhs.push(rhs);
    }

    pub fn add_ge(&mut self, row: Vec<f64>, rhs: f64) {
        self.add_le(row.into_iter().map(|v| -v).collect(), -rhs);
    }

    pub fn add_eq(&mut self, row: Vec<f64>, rhs: f64) {
        assert_eq!(row.len(), self.ncols);
        self.eq_rows.push(row);
        self.eq_rhs.push(rhs);
    }

    /// Adds the cone constraint `‖(r_2, …, r_k)‖₂ ≤ r_1` with affine
    /// `r_j = rows[j]·x + consts[j]`.
    pub fn add_soc(&mut self, rows: Vec<Vec<f64>>, consts: Vec<f64>) {
        assert!(rows.len() >= 2 && rows.len() == consts.len());
        for r in &rows {
            assert_eq!(r.len(), self.ncols);
        }
        self.soc_blocks.push((rows, consts));
    }

    /// Adds `x_j ≥ 0`.
    pub fn nonneg(&mut self, j: usize) {
        let mut row = vec![0.0; self.ncols];
        row[j] = -1.0;
        self.add_le(row, 0.0);
    }

    pub fn solve(&self) -> std::result::Result<LpSolution, LpFailure> {
        let n = self.ncols;
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(self.eq_rows.len() + self.le_rows.len());
        rows.extend(self.eq_rows.iter().cloned());
        rows.extend(self.le_rows.iter().cloned());
        let mut b: Vec<f64> = self.eq_rhs.clone();
        b.extend_from_slice(&self.le_rhs);
        for (r, c) in &self.soc_blocks {
            rows.extend(r.iter().map(|row| row.iter().map(|v| -v).collect::<Vec<f64>>()));
            b.extend_from_slice(c);
        }

        let a = if rows.is_empty() {
            CscMatrix::zeros((0, n))
        } else {
            CscMatrix::from(&rows)
        };
        let p = CscMatrix::zeros((n, n));
        let q: Vec<f64> = match self.sense {
            Sense::Minimize => self.objective.clone(),
            Sense::Maximize => self.objective.iter().map(|v| -v).collect(),
        };
        let mut cones = Vec::new();
        if !self.eq_rows.is_empty() {
            cones.push(ZeroConeT(self.eq_rows.len()));
        }
        if !self.le_rows.is_empty() {
            cones.push(NonnegativeConeT(self.le_rows.len()));
        }
        for (r, _) in &self.soc_blocks {
            cones.push(SecondOrderConeT(r.len()));
        }

        let settings = DefaultSettingsBuilder::default()
            .verbose(false)
            .tol_gap_abs(self.tolerance)
            .tol_gap_rel(self.tolerance)
            .tol_feas(self.tolerance)
            .max_iter(400)
            .build()
            .map_err(|e| LpFailure::Numerical(format!("settings: {e:?}")))?;
        let mut solver = DefaultSolver::new(&p, &q, &a, &b, &cones, settings)
            .map_err(|e| LpFailure::Numerical(format!("setup: {e:?}")))?;
        solver.solve();

        match solver.solution.status {
            SolverStatus::Solved | SolverStatus::AlmostSolved => {
                let value = match self.sense {
                    Sense::Minimize => solver.solution.obj_val,
                    Sense::Maximize => -solver.solution.obj_val,
                };
                Ok(LpSolution {
                    x: solver.solution.x.clone(),
                    value,
                })
            }
            SolverStatus::PrimalInfeasible | SolverStatus::AlmostPrimalInfeasible => {
                Err(LpFailure::Infeasible)
            }
            SolverStatus::DualInfeasible | SolverStatus::AlmostDualInfeasible => {
                Err(LpFailure::Unbounded)
            }
            other => Err(LpFailure::Numerical(format!("{other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_variables_and_bounded_optimum() {
        let mut lp = LinearProgram::new(2, Sense::Maximize, vec![1.0, 1.0]);
        lp.add_le(vec![1.0, 1.0], 2.0);
        lp.add_le(vec![1.0, 0.0], 1.5);
        let s = lp.solve().unwrap();
        assert!((s.value - 2.0).abs() < 1e-8);
    }

    #[test]
    fn second_order_cone() {
        // max x + y  s.t.  ‖(x, y)‖ ≤ 1
        let mut lp = LinearProgram::new(2, Sense::Maximize, vec![1.0, 1.0]);
        lp.add_soc(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]], vec![1.0, 0.0, 0.0]);
        let s = lp.solve().unwrap();
        assert!((s.value - 2f64.sqrt()).abs() < 1e-7);
    }

    #[test]
    fn detects_unbounded() {
        let mut lp = LinearProgram::new(1, Sense::Maximize, vec![1.0]);
        lp.add_le(vec![-1.0], 2.0);
        assert_eq!(lp.solve().unwrap_err(), LpFailure::Unbounded);
    }

    #[test]
    fn detects_infeasible() {
        let mut lp = LinearProgram::new(1, Sense::Minimize, vec![1.0]);
        lp.add_le(vec![1.0], -1.0);
        lp.add_le(vec![-1.0], -1.0);
        assert_eq!(lp.solve().unwrap_err(), LpFailure::Infeasible);
    }

    #[test]
    fn equality_rows() {
        // min x + 2y, x + y = 1, x, y ≥ 0
        let mut lp = LinearProgram::new(2, Sense::Minimize, vec![1.0, 2.0]);
        lp.add_eq(vec![1.0, 1.0], 1.0);
        lp.nonneg(0);
        lp.nonneg(1);
        let s = lp.solve().unwrap();
        assert!((s.value - 1.0).abs() < 1e-8);
        assert!((s.x[0] - 1.0).abs() < 1e-6);
    }
}
