//! Minimal dense two-phase simplex solver.
//!
//! Sized for this crate's one linear program (a few dozen variables and
//! rows): dense tableau, Bland's rule on both the entering and leaving
//! choices so cycling cannot occur, artificials driven out in phase 1.
//! Minimizes c·x subject to ≤ and = rows over x ≥ 0; negative right-hand
//! sides canonicalize through internal ≥ rows.

use thiserror::Error;

const EPS: f64 = 1e-9;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SimplexError {
    #[error("problem is infeasible")]
    Infeasible,
    #[error("problem is unbounded")]
    Unbounded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sense {
    Le,
    Ge,
    Eq,
}

pub struct Problem {
    n_vars: usize,
    objective: Vec<f64>,
    rows: Vec<(Vec<f64>, f64, Sense)>,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub values: Vec<f64>,
    pub objective: f64,
}

impl Problem {
    pub fn new(n_vars: usize) -> Self {
        Self {
            n_vars,
            objective: vec![0.0; n_vars],
            rows: Vec::new(),
        }
    }

    pub fn set_objective(&mut self, coefficients: Vec<f64>) {
        assert_eq!(coefficients.len(), self.n_vars);
        self.objective = coefficients;
    }

    pub fn add_le(&mut self, coefficients: Vec<f64>, rhs: f64) {
        assert_eq!(coefficients.len(), self.n_vars);
        self.rows.push((coefficients, rhs, Sense::Le));
    }

    pub fn add_eq(&mut self, coefficients: Vec<f64>, rhs: f64) {
        assert_eq!(coefficients.len(), self.n_vars);
        self.rows.push((coefficients, rhs, Sense::Eq));
    }

    pub fn solve(&self) -> Result<Solution, SimplexError> {
        // Canonicalize: non-negative right-hand sides.
        let mut rows: Vec<(Vec<f64>, f64, Sense)> = self
            .rows
            .iter()
            .map(|(coeffs, rhs, sense)| {
                if *rhs < 0.0 {
                    let flipped = match sense {
                        Sense::Le => Sense::Ge,
                        Sense::Ge => Sense::Le,
                        Sense::Eq => Sense::Eq,
                    };
                    (coeffs.iter().map(|c| -c).collect(), -rhs, flipped)
                } else {
                    (coeffs.clone(), *rhs, *sense)
                }
            })
            .collect();
        rows.sort_by_key(|(_, _, sense)| match sense {
            // Group Le rows first so slack columns come out contiguous; the
            // ordering is cosmetic, correctness does not depend on it.
            Sense::Le => 0,
            Sense::Ge => 1,
            Sense::Eq => 2,
        });

        let m = rows.len();
        let n_slack = rows
            .iter()
            .filter(|(_, _, s)| matches!(s, Sense::Le | Sense::Ge))
            .count();
        let n_art = rows
            .iter()
            .filter(|(_, _, s)| matches!(s, Sense::Ge | Sense::Eq))
            .count();
        let total = self.n_vars + n_slack + n_art;

        // Tableau: m constraint rows × (total + 1), rhs in the last column.
        let mut tableau = vec![vec![0.0; total + 1]; m];
        let mut basis = vec![0usize; m];
        let mut slack_idx = self.n_vars;
        let mut art_idx = self.n_vars + n_slack;
        let art_start = self.n_vars + n_slack;

        for (i, (coeffs, rhs, sense)) in rows.iter().enumerate() {
            tableau[i][..self.n_vars].copy_from_slice(coeffs);
            tableau[i][total] = *rhs;
            match sense {
                Sense::Le => {
                    tableau[i][slack_idx] = 1.0;
                    basis[i] = slack_idx;
                    slack_idx += 1;
                }
                Sense::Ge => {
                    tableau[i][slack_idx] = -1.0;
                    slack_idx += 1;
                    tableau[i][art_idx] = 1.0;
                    basis[i] = art_idx;
                    art_idx += 1;
                }
                Sense::Eq => {
                    tableau[i][art_idx] = 1.0;
                    basis[i] = art_idx;
                    art_idx += 1;
                }
            }
        }

        // Phase 1: minimize the sum of artificials.
        if n_art > 0 {
            let mut cost = vec![0.0; total + 1];
            cost[art_start..total].fill(1.0);
            for (i, &b) in basis.iter().enumerate() {
                if b >= art_start {
                    for (c, t) in cost.iter_mut().zip(&tableau[i]) {
                        *c -= t;
                    }
                }
            }
            pivot_until_optimal(&mut tableau, &mut basis, &mut cost, total, None)?;
            if -cost[total] > 1e-7 {
                return Err(SimplexError::Infeasible);
            }
            // Drive any artificial still basic (at zero) out of the basis.
            for i in 0..m {
                if basis[i] >= art_start {
                    if let Some(j) = (0..art_start).find(|&j| tableau[i][j].abs() > EPS) {
                        pivot(&mut tableau, &mut basis, i, j, &mut cost);
                    }
                    // A row with no eligible column is redundant; its basic
                    // artificial stays at zero and never re-enters because
                    // phase 2 bans artificial columns.
                }
            }
        }

        // Phase 2: original objective, artificial columns banned.
        let mut cost = vec![0.0; total + 1];
        cost[..self.n_vars].copy_from_slice(&self.objective);
        for (i, &b) in basis.iter().enumerate() {
            if cost[b].abs() > 0.0 {
                let factor = cost[b];
                for j in 0..=total {
                    cost[j] -= factor * tableau[i][j];
                }
            }
        }
        pivot_until_optimal(&mut tableau, &mut basis, &mut cost, total, Some(art_start))?;

        let mut values = vec![0.0; self.n_vars];
        for (i, &b) in basis.iter().enumerate() {
            if b < self.n_vars {
                values[b] = tableau[i][total];
            }
        }
        let objective = self.objective.iter().zip(&values).map(|(c, x)| c * x).sum();
        Ok(Solution { values, objective })
    }
}

fn pivot_until_optimal(
    tableau: &mut [Vec<f64>],
    basis: &mut [usize],
    cost: &mut [f64],
    total: usize,
    ban_from: Option<usize>,
) -> Result<(), SimplexError> {
    let limit = ban_from.unwrap_or(total);
    loop {
        // Bland: entering column with the smallest index.
        let Some(entering) = (0..limit).find(|&j| cost[j] < -EPS) else {
            return Ok(());
        };
        // Ratio test, ties broken by the smallest basic variable index.
        let mut leaving: Option<(usize, f64)> = None;
        for (i, row) in tableau.iter().enumerate() {
            if row[entering] > EPS {
                let ratio = row[total] / row[entering];
                leaving = match leaving {
                    None => Some((i, ratio)),
                    Some((best_i, best)) => {
                        if ratio < best - EPS
                            || ((ratio - best).abs() <= EPS && basis[i] < basis[best_i])
                        {
                            Some((i, ratio))
                        } else {
                            Some((best_i, best))
                        }
                    }
                };
            }
        }
        let Some((row, _)) = leaving else {
            return Err(SimplexError::Unbounded);
        };
        pivot(tableau, basis, row, entering, cost);
    }
}

fn pivot(tableau: &mut [Vec<f64>], basis: &mut [usize], row: usize, col: usize, cost: &mut [f64]) {
    let scale = tableau[row][col];
    for v in tableau[row].iter_mut() {
        *v /= scale;
    }
    let pivot_row = tableau[row].clone();
    for (i, other) in tableau.iter_mut().enumerate() {
        if i != row && other[col].abs() > 0.0 {
            let factor = other[col];
            for (v, p) in other.iter_mut().zip(&pivot_row) {
                *v -= factor * p;
            }
        }
    }
    if cost[col].abs() > 0.0 {
        let factor = cost[col];
        for (c, p) in cost.iter_mut().zip(&pivot_row) {
            *c -= factor * p;
        }
    }
    basis[row] = col;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximize_sum_inside_triangle() {
        // min −x − y s.t. x + y ≤ 1.
        let mut p = Problem::new(2);
        p.set_objective(vec![-1.0, -1.0]);
        p.add_le(vec![1.0, 1.0], 1.0);
        let s = p.solve().unwrap();
        assert!((s.objective + 1.0).abs() < 1e-9);
    }

    #[test]
    fn lower_bound_via_negated_le_row() {
        // min x s.t. x ≥ 3, written as −x ≤ −3 to exercise canonicalization.
        let mut p = Problem::new(1);
        p.set_objective(vec![1.0]);
        p.add_le(vec![-1.0], -3.0);
        let s = p.solve().unwrap();
        assert!((s.values[0] - 3.0).abs() < 1e-9);
    }

    #[test]
    fn equality_with_cap() {
        // min x + 2y s.t. x + y = 2, x ≤ 0.5 → x = 0.5, y = 1.5.
        let mut p = Problem::new(2);
        p.set_objective(vec![1.0, 2.0]);
        p.add_eq(vec![1.0, 1.0], 2.0);
        p.add_le(vec![1.0, 0.0], 0.5);
        let s = p.solve().unwrap();
        assert!((s.values[0] - 0.5).abs() < 1e-9);
        assert!((s.values[1] - 1.5).abs() < 1e-9);
        assert!((s.objective - 3.5).abs() < 1e-9);
    }

    #[test]
    fn negative_rhs_is_canonicalized() {
        // min y s.t. −x − y ≤ −2, x ≤ 1 → y ≥ 1.
        let mut p = Problem::new(2);
        p.set_objective(vec![0.0, 1.0]);
        p.add_le(vec![-1.0, -1.0], -2.0);
        p.add_le(vec![1.0, 0.0], 1.0);
        let s = p.solve().unwrap();
        assert!((s.values[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn detects_infeasibility() {
        // x ≤ 1 and x ≥ 2 cannot both hold.
        let mut p = Problem::new(1);
        p.set_objective(vec![1.0]);
        p.add_le(vec![1.0], 1.0);
        p.add_le(vec![-1.0], -2.0);
        assert_eq!(p.solve().unwrap_err(), SimplexError::Infeasible);
    }

    #[test]
    fn detects_unboundedness() {
        // min −x with no upper bound on x.
        let mut p = Problem::new(1);
        p.set_objective(vec![-1.0]);
        p.add_le(vec![-1.0], 0.0);
        assert_eq!(p.solve().unwrap_err(), SimplexError::Unbounded);
    }

    #[test]
    fn tiny_l1_projection() {
        // Project the point (0.9, 0.1) onto the segment between (1, 0) and
        // (0, 1) parameterized by a weight w: minimize
        // |w − 0.9| + |(1 − w) − 0.1| = 2|w − 0.9| → w = 0.9, distance 0.
        // Variables: w, e0, e1; min e0 + e1.
        let mut p = Problem::new(3);
        p.set_objective(vec![0.0, 1.0, 1.0]);
        // w − e0 ≤ 0.9, −w − e0 ≤ −0.9
        p.add_le(vec![1.0, -1.0, 0.0], 0.9);
        p.add_le(vec![-1.0, -1.0, 0.0], -0.9);
        // (1 − w) vs 0.1 → −w − e1 ≤ −0.9, w − e1 ≤ 0.9
        p.add_le(vec![-1.0, 0.0, -1.0], -0.9);
        p.add_le(vec![1.0, 0.0, -1.0], 0.9);
        p.add_le(vec![1.0, 0.0, 0.0], 1.0);
        let s = p.solve().unwrap();
        assert!(s.objective.abs() < 1e-9);
        assert!((s.values[0] - 0.9).abs() < 1e-9);
    }
}
