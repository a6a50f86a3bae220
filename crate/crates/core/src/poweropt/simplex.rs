//! Dense two-phase primal simplex for `min c'x  s.t.  A x <= b, E x = f, x >= 0`.

use crate::error::{contract, Result};

const PIVOT_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-10;
const PHASE_ONE_TOL: f64 = 1e-9;
const HARRIS_SLACK: f64 = 1e-11;
const FEASIBILITY_TOL: f64 = 1e-9;
/// Consecutive degenerate pivots tolerated before switching to Bland's rule.
const DEGENERATE_RUN: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub c: Vec<f64>,
    pub a_ub: Vec<Vec<f64>>,
    pub b_ub: Vec<f64>,
    pub a_eq: Vec<Vec<f64>>,
    pub b_eq: Vec<f64>,
}

impl LpProblem {
    pub fn new(
        c: Vec<f64>,
        a_ub: Vec<Vec<f64>>,
        b_ub: Vec<f64>,
        a_eq: Vec<Vec<f64>>,
        b_eq: Vec<f64>,
    ) -> Result<Self> {
        let lp = Self {
            c,
            a_ub,
            b_ub,
            a_eq,
            b_eq,
        };
        lp.validate()?;
        Ok(lp)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.c.len();
        if n == 0 {
            return Err(contract("linear program has no variables"));
        }
        if self.a_ub.len() != self.b_ub.len() || self.a_eq.len() != self.b_eq.len() {
            return Err(contract("row count does not match right-hand side length"));
        }
        let rows = self.a_ub.iter().chain(&self.a_eq);
        for (i, row) in rows.enumerate() {
            if row.len() != n {
                return Err(contract(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
        }
        let all = self
            .c
            .iter()
            .chain(self.a_ub.iter().flatten())
            .chain(&self.b_ub)
            .chain(self.a_eq.iter().flatten())
            .chain(&self.b_eq);
        if all.clone().any(|x| !x.is_finite()) {
            return Err(contract("linear program has non-finite entries"));
        }
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.c.len()
    }

    pub fn objective(&self, x: &[f64]) -> f64 {
        dot(&self.c, x)
    }

    /// Largest violation of any constraint, including nonnegativity.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let ub = self
            .a_ub
            .iter()
            .zip(&self.b_ub)
            .map(|(row, &b)| (dot(row, x) - b).max(0.0));
        let eq = self
            .a_eq
            .iter()
            .zip(&self.b_eq)
            .map(|(row, &b)| (dot(row, x) - b).abs());
        let neg = x.iter().map(|&xi| (-xi).max(0.0));
        ub.chain(eq).chain(neg).fold(0.0, f64::max)
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Primal point; meaningful only when `status` is `Optimal`.
    pub x: Vec<f64>,
    pub objective: f64,
    pub iterations: usize,
}

struct Tableau {
    width: usize,
    rows: usize,
    cells: Vec<f64>,
    cost: Vec<f64>,
    basis: Vec<usize>,
    allowed: usize,
    iterations: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
    IterationLimit,
}

impl Tableau {
    fn rhs(&self, r: usize) -> f64 {
        self.cells[r * self.width + self.width - 1]
    }

    fn at(&self, r: usize, col: usize) -> f64 {
        self.cells[r * self.width + col]
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let w = self.width;
        let inv = 1.0 / self.at(r, col);
        // Degenerate rows must not carry roundoff negatives into the pivot:
        // dividing by a small pivot would amplify them.
        if self.cells[r * w + w - 1] < 0.0 {
            self.cells[r * w + w - 1] = 0.0;
        }
        let (before, rest) = self.cells.split_at_mut(r * w);
        let (pivot_row, after) = rest.split_at_mut(w);
        pivot_row.iter_mut().for_each(|x| *x *= inv);
        pivot_row[col] = 1.0;
        let eliminate = |row: &mut [f64]| {
            let f = row[col];
            if f != 0.0 {
                row.iter_mut()
                    .zip(pivot_row.iter())
                    .for_each(|(x, p)| *x -= f * p);
                row[col] = 0.0;
            }
        };
        before.chunks_exact_mut(w).for_each(eliminate);
        after.chunks_exact_mut(w).for_each(eliminate);
        eliminate(&mut self.cost);
        self.basis[r] = col;
        for row in self.cells.chunks_exact_mut(w) {
            let rhs = &mut row[w - 1];
            if *rhs < 0.0 && *rhs > -FEASIBILITY_TOL {
                *rhs = 0.0;
            }
        }
    }

    fn entering(&self, bland: bool) -> Option<usize> {
        let candidates = self.cost[..self.allowed]
            .iter()
            .enumerate()
            .filter(|(_, &d)| d < -COST_TOL);
        if bland {
            candidates.map(|(j, _)| j).next()
        } else {
            candidates.min_by(|a, b| a.1.total_cmp(b.1)).map(|(j, _)| j)
        }
    }

    /// Two-pass (Harris) ratio test: among rows whose ratio is within a small
    /// feasibility slack of the minimum, take the largest pivot element; in
    /// Bland mode ties go to the smallest basic index instead.
    fn leaving(&self, col: usize, bland: bool) -> Option<(usize, f64)> {
        let mut theta = f64::INFINITY;
        for r in 0..self.rows {
            let a = self.at(r, col);
            if a > PIVOT_TOL {
                theta = theta.min((self.rhs(r).max(0.0) + HARRIS_SLACK) / a);
            }
        }
        if !theta.is_finite() {
            return None;
        }
        let mut best: Option<(usize, f64)> = None;
        for r in 0..self.rows {
            let a = self.at(r, col);
            if a > PIVOT_TOL && self.rhs(r).max(0.0) / a <= theta {
                let better = match best {
                    None => true,
                    Some((br, _)) if bland => self.basis[r] < self.basis[br],
                    Some((br, _)) => a > self.at(br, col),
                };
                if better {
                    best = Some((r, self.rhs(r).max(0.0) / a));
                }
            }
        }
        best
    }

    fn run(&mut self, limit: usize) -> Outcome {
        let mut degenerate = 0usize;
        loop {
            if self.iterations >= limit {
                return Outcome::IterationLimit;
            }
            let bland = degenerate >= DEGENERATE_RUN;
            let Some(col) = self.entering(bland) else {
                return Outcome::Optimal;
            };
            let Some((r, ratio)) = self.leaving(col, bland) else {
                return Outcome::Unbounded;
            };
            if ratio <= 1e-12 {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(r, col);
            self.iterations += 1;
        }
    }
}

/// Solves the program; infeasibility and unboundedness are reported in the status.
pub fn simplex_solve(lp: &LpProblem) -> LpSolution {
    let n = lp.num_vars();
    let m_ub = lp.b_ub.len();
    let m = m_ub + lp.b_eq.len();

    let mut rows: Vec<(Vec<f64>, f64, bool)> = Vec::with_capacity(m);
    for (a, &b) in lp.a_ub.iter().zip(&lp.b_ub) {
        rows.push((a.clone(), b, true));
    }
    for (a, &b) in lp.a_eq.iter().zip(&lp.b_eq) {
        rows.push((a.clone(), b, false));
    }
    // Equilibrate and make every right-hand side nonnegative.
    let mut slack_sign = vec![0.0; m];
    let mut needs_artificial = vec![false; m];
    for (i, (a, b, is_ub)) in rows.iter_mut().enumerate() {
        let scale = a.iter().fold(b.abs(), |acc, x| acc.max(x.abs()));
        let scale = if scale > 0.0 { scale } else { 1.0 };
        let sign = if *b < 0.0 { -1.0 } else { 1.0 };
        a.iter_mut().for_each(|x| *x *= sign / scale);
        *b *= sign / scale;
        if *is_ub {
            slack_sign[i] = sign;
            needs_artificial[i] = sign < 0.0;
        } else {
            needs_artificial[i] = true;
        }
    }
    let artificials: Vec<usize> = (0..m).filter(|&i| needs_artificial[i]).collect();
    let n_art = artificials.len();
    let width = n + m_ub + n_art + 1;
    let mut cells = vec![0.0; m * width];
    let mut basis = vec![0usize; m];
    for (i, (a, b, _)) in rows.iter().enumerate() {
        let row = &mut cells[i * width..(i + 1) * width];
        row[..n].copy_from_slice(a);
        if i < m_ub {
            row[n + i] = slack_sign[i];
            basis[i] = n + i;
        }
        row[width - 1] = *b;
    }
    for (k, &i) in artificials.iter().enumerate() {
        let col = n + m_ub + k;
        cells[i * width + col] = 1.0;
        basis[i] = col;
    }

    let limit = 20_000 + 50 * (m + width);
    let mut t = Tableau {
        width,
        rows: m,
        cells,
        cost: vec![0.0; width],
        basis,
        allowed: width - 1,
        iterations: 0,
    };

    if n_art > 0 {
        for k in 0..n_art {
            t.cost[n + m_ub + k] = 1.0;
        }
        for &i in &artificials {
            for j in 0..width {
                t.cost[j] -= t.cells[i * width + j];
            }
        }
        if let Outcome::IterationLimit = t.run(limit) {
            return failed(LpStatus::IterationLimit, n, t.iterations);
        }
        let infeasibility: f64 = (0..m)
            .filter(|&r| t.basis[r] >= n + m_ub)
            .map(|r| t.rhs(r))
            .sum();
        if infeasibility > PHASE_ONE_TOL {
            return failed(LpStatus::Infeasible, n, t.iterations);
        }
        for r in 0..m {
            if t.basis[r] >= n + m_ub {
                let col = (0..n + m_ub)
                    .filter(|&j| t.at(r, j).abs() > PIVOT_TOL)
                    .max_by(|&a, &b| t.at(r, a).abs().total_cmp(&t.at(r, b).abs()));
                if let Some(col) = col {
                    t.pivot(r, col);
                }
            }
        }
    }

    t.allowed = n + m_ub;
    t.cost.iter_mut().for_each(|x| *x = 0.0);
    t.cost[..n].copy_from_slice(&lp.c);
    for r in 0..m {
        let cb = if t.basis[r] < n {
            lp.c[t.basis[r]]
        } else {
            0.0
        };
        if cb != 0.0 {
            for j in 0..width {
                t.cost[j] -= cb * t.cells[r * width + j];
            }
        }
    }
    match t.run(limit) {
        Outcome::Unbounded => return failed(LpStatus::Unbounded, n, t.iterations),
        Outcome::IterationLimit => return failed(LpStatus::IterationLimit, n, t.iterations),
        Outcome::Optimal => {}
    }
    let mut x = vec![0.0; n];
    for r in 0..m {
        if t.basis[r] < n {
            x[t.basis[r]] = t.rhs(r).max(0.0);
        }
    }
    LpSolution {
        status: LpStatus::Optimal,
        objective: lp.objective(&x),
        x,
        iterations: t.iterations,
    }
}

fn failed(status: LpStatus, n: usize, iterations: usize) -> LpSolution {
    LpSolution {
        status,
        x: vec![0.0; n],
        objective: f64::NAN,
        iterations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_solvable() {
        let lp = LpProblem::new(
            vec![1.0, 2.0],
            vec![],
            vec![],
            vec![vec![1.0, 1.0]],
            vec![1.0],
        )
        .unwrap();
        let sol = simplex_solve(&lp);
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.x[0] - 1.0).abs() < 1e-12 && sol.x[1].abs() < 1e-12);
        assert!((sol.objective - 1.0).abs() < 1e-12);
    }

    #[test]
    fn single_variable_forced() {
        let lp = LpProblem::new(
            vec![3.0],
            vec![vec![2.0]],
            vec![5.0],
            vec![vec![1.0]],
            vec![1.0],
        )
        .unwrap();
        let sol = simplex_solve(&lp);
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.x[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let infeasible = LpProblem::new(
            vec![1.0, 1.0],
            vec![vec![1.0, 1.0]],
            vec![0.5],
            vec![vec![1.0, 1.0]],
            vec![1.0],
        )
        .unwrap();
        assert_eq!(simplex_solve(&infeasible).status, LpStatus::Infeasible);
        let unbounded = LpProblem::new(
            vec![-1.0, 0.0],
            vec![vec![-1.0, 1.0]],
            vec![1.0],
            vec![],
            vec![],
        )
        .unwrap();
        assert_eq!(simplex_solve(&unbounded).status, LpStatus::Unbounded);
    }

    #[test]
    fn negative_rhs_needs_phase_one() {
        // x1 + x2 >= 2 written as -x1 - x2 <= -2, min x1 + 3 x2.
        let lp = LpProblem::new(
            vec![1.0, 3.0],
            vec![vec![-1.0, -1.0], vec![1.0, 0.0]],
            vec![-2.0, 1.5],
            vec![],
            vec![],
        )
        .unwrap();
        let sol = simplex_solve(&lp);
        assert_eq!(sol.status, LpStatus::Optimal);
        assert!((sol.x[0] - 1.5).abs() < 1e-12);
        assert!((sol.x[1] - 0.5).abs() < 1e-12);
        assert!(lp.max_violation(&sol.x) < 1e-12);
    }

    #[test]
    fn rejects_malformed() {
        assert!(LpProblem::new(vec![], vec![], vec![], vec![], vec![]).is_err());
        assert!(
            LpProblem::new(vec![1.0], vec![vec![1.0, 2.0]], vec![1.0], vec![], vec![]).is_err()
        );
        assert!(LpProblem::new(vec![f64::NAN], vec![], vec![], vec![], vec![]).is_err());
    }
}
