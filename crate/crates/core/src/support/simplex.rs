//! Dense two-phase simplex over exact rationals.
//!
//! Solves `maximize c·x subject to A x = b, x ≥ 0`. Bland's rule is used for
//! both entering and leaving variables, so degenerate pivots cannot cycle.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
}

/// A linear program in equality standard form.
#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    objective: Vec<Rational>,
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub x: Vec<Rational>,
}

impl LinearProgram {
    /// A program over `vars` non-negative variables with a zero objective.
    pub fn new(vars: usize) -> Self {
        LinearProgram {
            objective: vec![Rational::zero(); vars],
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn set_objective(&mut self, var: usize, coef: Rational) {
        self.objective[var] = coef;
    }

    /// Adds `Σ coef·x_var = rhs`.
    pub fn add_equality(&mut self, terms: &[(usize, Rational)], rhs: Rational) {
        let mut row = vec![Rational::zero(); self.num_vars()];
        for (var, coef) in terms {
            row[*var] += coef;
        }
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    pub fn maximize(&self) -> Result<LpSolution, LpError> {
        Tableau::build(self).solve(&self.objective)
    }
}

struct Tableau {
    /// Constraint rows; the last entry of each row is the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Columns `n..n+m` are artificial.
    n: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Self {
        let n = lp.num_vars();
        let m = lp.rows.len();
        let mut rows = Vec::with_capacity(m);
        for (i, (row, b)) in lp.rows.iter().zip(&lp.rhs).enumerate() {
            let flip = b.is_negative();
            let mut t: Vec<Rational> = row
                .iter()
                .map(|v| if flip { -v.clone() } else { v.clone() })
                .collect();
            t.extend((0..m).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            t.push(if flip { -b.clone() } else { b.clone() });
            rows.push(t);
        }
        Tableau {
            rows,
            basis: (n..n + m).collect(),
            n,
        }
    }

    fn width(&self) -> usize {
        self.rows.first().map_or(self.n, |r| r.len() - 1)
    }

    /// Reduced profits `c_j - c_B B⁻¹ A_j` for the current basis, with the
    /// negated objective value in the last slot.
    fn reduced(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut d: Vec<Rational> = cost.to_vec();
        d.resize(self.width() + 1, Rational::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = cost.get(b).cloned().unwrap_or_else(Rational::zero);
            if cb.is_zero() {
                continue;
            }
            for (dj, tij) in d.iter_mut().zip(&self.rows[i]) {
                *dj -= &cb * tij;
            }
        }
        d
    }

    fn pivot(&mut self, r: usize, col: usize, d: &mut [Rational]) {
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        if !d[col].is_zero() {
            let f = d[col].clone();
            for (v, pv) in d.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = col;
    }

    /// Runs simplex iterations over columns `< limit`.
    fn optimize(&mut self, d: &mut [Rational], limit: usize) -> Result<(), LpError> {
        loop {
            let Some(col) = (0..limit).find(|&j| d[j].is_positive()) else {
                return Ok(());
            };
            let rhs = self.width();
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return Err(LpError::Unbounded);
            };
            self.pivot(r, col, d);
        }
    }

    fn solve(mut self, objective: &[Rational]) -> Result<LpSolution, LpError> {
        let n = self.n;
        let m = self.rows.len();
        let total = n + m;

        // Phase one: maximize -Σ artificials.
        let mut phase1 = vec![Rational::zero(); total];
        for c in phase1.iter_mut().skip(n) {
            *c = -Rational::one();
        }
        let mut d = self.reduced(&phase1);
        self.optimize(&mut d, total)?;
        if !d[total].is_zero() {
            return Err(LpError::Infeasible);
        }

        // Drive zero-valued artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= n {
                match (0..n).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(col) => {
                        let mut scratch = vec![Rational::zero(); total + 1];
                        self.pivot(i, col, &mut scratch);
                    }
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }

        let mut d = self.reduced(objective);
        self.optimize(&mut d, n)?;

        let rhs = self.width();
        let mut x = vec![Rational::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rows[i][rhs].clone();
            }
        }
        let value = objective
            .iter()
            .zip(&x)
            .fold(Rational::zero(), |acc, (c, v)| acc + c * v);
        Ok(LpSolution { value, x })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn small_maximization() {
        // max 3x + 2y s.t. x + y + s1 = 4, x + 3y + s2 = 6
        let mut lp = LinearProgram::new(4);
        lp.set_objective(0, int(3));
        lp.set_objective(1, int(2));
        lp.add_equality(&[(0, int(1)), (1, int(1)), (2, int(1))], int(4));
        lp.add_equality(&[(0, int(1)), (1, int(3)), (3, int(1))], int(6));
        let sol = lp.maximize().unwrap();
        assert_eq!(sol.value, int(12));
        assert_eq!(sol.x[0], int(4));
    }

    #[test]
    fn fractional_optimum() {
        // max x s.t. 2x + 3y = 1, x - y + s = 0  → x = y = 1/5
        let mut lp = LinearProgram::new(3);
        lp.set_objective(0, int(1));
        lp.add_equality(&[(0, int(2)), (1, int(3))], int(1));
        lp.add_equality(&[(0, int(1)), (1, int(-1)), (2, int(1))], int(0));
        let sol = lp.maximize().unwrap();
        assert_eq!(sol.value, ratio(1, 5));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add_equality(&[(0, int(1))], int(-1));
        assert_eq!(lp.maximize(), Err(LpError::Infeasible));

        let mut lp = LinearProgram::new(2);
        lp.set_objective(0, int(1));
        lp.add_equality(&[(0, int(1)), (1, int(-1))], int(0));
        assert_eq!(lp.maximize(), Err(LpError::Unbounded));
    }

    #[test]
    fn redundant_rows() {
        let mut lp = LinearProgram::new(2);
        lp.set_objective(1, int(1));
        lp.add_equality(&[(0, int(1)), (1, int(1))], int(2));
        lp.add_equality(&[(0, int(2)), (1, int(2))], int(4));
        let sol = lp.maximize().unwrap();
        assert_eq!(sol.value, int(2));
    }
}
