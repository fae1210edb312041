//! Exact rational simplex.
//!
//! Dense two-phase primal simplex over `BigRational`. Pivoting uses
//! Dantzig's rule while progress is being made and switches permanently
//! to Bland's rule after a run of degenerate pivots, which keeps the
//! termination guarantee while avoiding Bland's slow tail on the larger
//! infimal-convolution instances.

use num::{One, Signed, Zero};
use thiserror::Error;

use super::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct LpConstraint {
    pub coeffs: Vec<Rational>,
    pub cmp: Comparison,
    pub rhs: Rational,
}

/// Minimization problem over rational variables.
///
/// Variables are free unless flagged in `nonnegative`.
#[derive(Debug, Clone)]
pub struct LpProblem {
    pub num_vars: usize,
    pub objective: Vec<Rational>,
    pub constraints: Vec<LpConstraint>,
    pub nonnegative: Vec<bool>,
}

impl LpProblem {
    pub fn new(num_vars: usize) -> Self {
        LpProblem {
            num_vars,
            objective: vec![Rational::zero(); num_vars],
            constraints: Vec::new(),
            nonnegative: vec![false; num_vars],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpSolution {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("objective length {objective} does not match variable count {vars}")]
    ObjectiveShape { objective: usize, vars: usize },
    #[error("constraint {index} has {found} coefficients, expected {vars}")]
    ConstraintShape { index: usize, found: usize, vars: usize },
    #[error("bound flags length {flags} does not match variable count {vars}")]
    BoundsShape { flags: usize, vars: usize },
}

// After this many consecutive degenerate pivots under Dantzig's rule,
// fall back to Bland's rule for the rest of the solve.
const DEGENERATE_LIMIT: usize = 30;

struct Tableau {
    rows: Vec<Vec<Rational>>, // m x (n+1), last column is rhs
    basis: Vec<usize>,
    cost: Vec<Rational>, // reduced costs, length n+1 (last = -objective value)
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let piv = self.rows[row][col].clone();
        if !piv.is_one() {
            for x in self.rows[row].iter_mut() {
                if !x.is_zero() {
                    *x /= &piv;
                }
            }
        }
        let prow = self.rows[row].clone();
        for (r, data) in self.rows.iter_mut().enumerate() {
            if r == row {
                continue;
            }
            let factor = data[col].clone();
            if factor.is_zero() {
                continue;
            }
            for (x, p) in data.iter_mut().zip(prow.iter()) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
        let cfac = self.cost[col].clone();
        if !cfac.is_zero() {
            for (x, p) in self.cost.iter_mut().zip(prow.iter()) {
                if !p.is_zero() {
                    *x -= &cfac * p;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Entering column under the current rule; `allowed` bounds the column
    /// range (used to keep artificials out in phase 2 cleanup).
    fn entering(&self, bland: bool, allowed: usize) -> Option<usize> {
        if bland {
            (0..allowed).find(|&j| self.cost[j].is_negative())
        } else {
            let mut best: Option<(usize, &Rational)> = None;
            for j in 0..allowed {
                if self.cost[j].is_negative() {
                    match best {
                        Some((_, c)) if *c <= self.cost[j] => {}
                        _ => best = Some((j, &self.cost[j])),
                    }
                }
            }
            best.map(|(j, _)| j)
        }
    }

    /// Ratio test; ties broken by smallest basic-variable index (Bland).
    fn leaving(&self, col: usize) -> Option<usize> {
        let rhs = self.ncols;
        let mut best: Option<(usize, Rational)> = None;
        for (r, row) in self.rows.iter().enumerate() {
            if row[col].is_positive() {
                let ratio = &row[rhs] / &row[col];
                let better = match &best {
                    None => true,
                    Some((br, bratio)) => {
                        ratio < *bratio
                            || (ratio == *bratio && self.basis[r] < self.basis[*br])
                    }
                };
                if better {
                    best = Some((r, ratio));
                }
            }
        }
        best.map(|(r, _)| r)
    }

    /// Runs simplex iterations to optimality; returns false on unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        let mut bland = false;
        let mut degenerate_run = 0usize;
        let rhs = self.ncols;
        while let Some(col) = self.entering(bland, allowed) {
            let Some(row) = self.leaving(col) else {
                return false;
            };
            let was_degenerate = self.rows[row][rhs].is_zero();
            self.pivot(row, col);
            if was_degenerate {
                degenerate_run += 1;
                if degenerate_run >= DEGENERATE_LIMIT {
                    bland = true;
                }
            } else {
                degenerate_run = 0;
            }
        }
        true
    }
}

/// Solve `min c·x` subject to the problem's constraints (exact).
pub fn solve_lp(problem: &LpProblem) -> Result<LpSolution, LpError> {
    let n = problem.num_vars;
    if problem.objective.len() != n {
        return Err(LpError::ObjectiveShape { objective: problem.objective.len(), vars: n });
    }
    if problem.nonnegative.len() != n {
        return Err(LpError::BoundsShape { flags: problem.nonnegative.len(), vars: n });
    }
    for (i, c) in problem.constraints.iter().enumerate() {
        if c.coeffs.len() != n {
            return Err(LpError::ConstraintShape { index: i, found: c.coeffs.len(), vars: n });
        }
    }

    // Standard form: free variable j becomes pos[j] - neg[j].
    let mut col_of_pos = Vec::with_capacity(n);
    let mut col_of_neg = Vec::with_capacity(n);
    let mut ncols = 0usize;
    for flag in &problem.nonnegative {
        col_of_pos.push(ncols);
        ncols += 1;
        if *flag {
            col_of_neg.push(None);
        } else {
            col_of_neg.push(Some(ncols));
            ncols += 1;
        }
    }
    let nslack = problem
        .constraints
        .iter()
        .filter(|c| c.cmp != Comparison::Eq)
        .count();
    let struct_cols = ncols;
    ncols += nslack;

    let m = problem.constraints.len();
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut slack_col = struct_cols;
    let mut slack_in_row: Vec<Option<usize>> = Vec::with_capacity(m);
    for c in &problem.constraints {
        // columns + rhs + room for artificials appended later
        let mut row = vec![Rational::zero(); ncols];
        for (j, coef) in c.coeffs.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            row[col_of_pos[j]] = coef.clone();
            if let Some(negc) = col_of_neg[j] {
                row[negc] = -coef;
            }
        }
        let slack = match c.cmp {
            Comparison::Le => {
                row[slack_col] = Rational::one();
                let s = slack_col;
                slack_col += 1;
                Some(s)
            }
            Comparison::Ge => {
                row[slack_col] = -Rational::one();
                let s = slack_col;
                slack_col += 1;
                Some(s)
            }
            Comparison::Eq => None,
        };
        row.push(c.rhs.clone());
        // normalize rhs >= 0
        if row[ncols].is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
        slack_in_row.push(slack);
        rows.push(row);
    }

    // Initial basis: a slack with +1 coefficient where possible,
    // otherwise an artificial variable.
    let mut basis = vec![usize::MAX; m];
    let mut artificials = Vec::new();
    for (r, slack) in slack_in_row.iter().enumerate() {
        match slack {
            Some(s) if rows[r][*s].is_one() => basis[r] = *s,
            _ => artificials.push(r),
        }
    }
    let nart = artificials.len();
    let total = ncols + nart;
    for row in rows.iter_mut() {
        let rhs = row.pop().unwrap();
        row.extend(std::iter::repeat(Rational::zero()).take(nart));
        row.push(rhs);
    }
    for (k, &r) in artificials.iter().enumerate() {
        rows[r][ncols + k] = Rational::one();
        basis[r] = ncols + k;
    }

    // Phase 1: minimize the sum of artificials.
    if nart > 0 {
        let mut cost = vec![Rational::zero(); total + 1];
        for k in 0..nart {
            cost[ncols + k] = Rational::one();
        }
        // price out the artificial basis
        for &r in &artificials {
            let row = rows[r].clone();
            for (x, p) in cost.iter_mut().zip(row.iter()) {
                *x -= p;
            }
        }
        let mut tab = Tableau { rows, basis, cost, ncols: total };
        let bounded = tab.optimize(total);
        debug_assert!(bounded, "phase 1 objective is bounded below by zero");
        if tab.cost[total].is_negative() {
            return Ok(LpSolution::Infeasible);
        }
        // Drive remaining artificials out of the basis; a row where that
        // is impossible is redundant and gets dropped.
        let mut drop_rows = Vec::new();
        for r in 0..tab.rows.len() {
            if tab.basis[r] >= ncols {
                match (0..ncols).find(|&j| !tab.rows[r][j].is_zero()) {
                    Some(j) => tab.pivot(r, j),
                    None => drop_rows.push(r),
                }
            }
        }
        for &r in drop_rows.iter().rev() {
            tab.rows.remove(r);
            tab.basis.remove(r);
        }
        rows = tab.rows;
        basis = tab.basis;
        // truncate artificial columns
        for row in rows.iter_mut() {
            let rhs = row.pop().unwrap();
            row.truncate(ncols);
            row.push(rhs);
        }
    }

    // Phase 2 cost row: reduced costs of the original objective.
    let mut cost = vec![Rational::zero(); ncols + 1];
    for j in 0..n {
        cost[col_of_pos[j]] = problem.objective[j].clone();
        if let Some(negc) = col_of_neg[j] {
            cost[negc] = -&problem.objective[j];
        }
    }
    for (r, &b) in basis.iter().enumerate() {
        let factor = cost[b].clone();
        if factor.is_zero() {
            continue;
        }
        let row = rows[r].clone();
        for (x, p) in cost.iter_mut().zip(row.iter()) {
            if !p.is_zero() {
                *x -= &factor * p;
            }
        }
    }
    let mut tab = Tableau { rows, basis, cost, ncols };
    if !tab.optimize(ncols) {
        return Ok(LpSolution::Unbounded);
    }

    let mut std_point = vec![Rational::zero(); ncols];
    for (r, &b) in tab.basis.iter().enumerate() {
        std_point[b] = tab.rows[r][ncols].clone();
    }
    let point: Vec<Rational> = (0..n)
        .map(|j| match col_of_neg[j] {
            Some(negc) => &std_point[col_of_pos[j]] - &std_point[negc],
            None => std_point[col_of_pos[j]].clone(),
        })
        .collect();
    let value = -tab.cost[ncols].clone();
    Ok(LpSolution::Optimal { value, point })
}
