//! Exact linear feasibility and optimization over `{ x : A x = b, x >= 0 }`.
//!
//! A dense two-phase simplex over [`Rational`]. Pivoting follows Bland's rule
//! (smallest eligible entering column, smallest basic index among tied leaving
//! rows), which terminates even on the heavily degenerate systems produced by
//! the collinear constructions this crate works with.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{is_nonnegative, Rational};

/// Equality constraints `A x = b` over nonnegative variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilitySystem {
    matrix: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    vars: usize,
}

impl FeasibilitySystem {
    pub fn new(matrix: Vec<Vec<Rational>>, rhs: Vec<Rational>, vars: usize) -> Result<Self> {
        if matrix.len() != rhs.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} constraint rows but {} right-hand sides",
                matrix.len(),
                rhs.len()
            )));
        }
        if let Some((i, row)) = matrix.iter().enumerate().find(|(_, row)| row.len() != vars) {
            return Err(Error::DimensionMismatch(format!(
                "row {i} has {} coefficients, expected {vars}",
                row.len()
            )));
        }
        Ok(Self { matrix, rhs, vars })
    }

    /// An empty system over `vars` nonnegative variables, to be filled with [`push_row`].
    ///
    /// [`push_row`]: FeasibilitySystem::push_row
    pub fn with_vars(vars: usize) -> Self {
        Self { matrix: Vec::new(), rhs: Vec::new(), vars }
    }

    pub fn push_row(&mut self, coeffs: Vec<Rational>, rhs: Rational) -> Result<()> {
        if coeffs.len() != self.vars {
            return Err(Error::DimensionMismatch(format!(
                "row has {} coefficients, expected {}",
                coeffs.len(),
                self.vars
            )));
        }
        self.matrix.push(coeffs);
        self.rhs.push(rhs);
        Ok(())
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn rows(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn rhs(&self) -> &[Rational] {
        &self.rhs
    }

    /// Exact substitution check: `x >= 0` and every equality holds.
    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        x.len() == self.vars
            && x.iter().all(is_nonnegative)
            && self.matrix.iter().zip(&self.rhs).all(|(row, b)| {
                let lhs: Rational = row
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, v)| a * v)
                    .sum();
                lhs == *b
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearOptimum {
    Optimum { value: Rational, assignment: Vec<Rational> },
    Infeasible,
    Unbounded,
}

/// Decides whether `A x = b, x >= 0` has a solution and returns one if so.
pub fn solve_feasibility(system: &FeasibilitySystem) -> Feasibility {
    match phase_one(system) {
        Some(tableau) => Feasibility::Feasible(tableau.assignment()),
        None => Feasibility::Infeasible,
    }
}

/// Optimizes `objective . x` over the feasible region of `system`.
pub fn optimize_linear(
    system: &FeasibilitySystem,
    objective: &[Rational],
    direction: Direction,
) -> Result<LinearOptimum> {
    if objective.len() != system.vars {
        return Err(Error::DimensionMismatch(format!(
            "objective has {} coefficients, system has {} variables",
            objective.len(),
            system.vars
        )));
    }
    let Some(mut tableau) = phase_one(system) else {
        return Ok(LinearOptimum::Infeasible);
    };

    // Minimize internally; maximizing c is minimizing -c.
    let cost: Vec<Rational> = match direction {
        Direction::Minimize => objective.to_vec(),
        Direction::Maximize => objective.iter().map(|c| -c).collect(),
    };
    tableau.set_objective(&cost);
    if !tableau.run(tableau.cols) {
        return Ok(LinearOptimum::Unbounded);
    }
    let assignment = tableau.assignment();
    let value: Rational = objective
        .iter()
        .zip(&assignment)
        .map(|(c, x)| c * x)
        .sum();
    Ok(LinearOptimum::Optimum { value, assignment })
}

/// Dense simplex tableau. Each row stores `cols` coefficients followed by the
/// right-hand side; `reduced` holds the reduced costs with the negated
/// objective value in its last slot.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    reduced: Vec<Rational>,
    cols: usize,
}

/// Runs phase I with one artificial per row. Returns a tableau over the
/// original columns with a feasible basis, or `None` when the artificial
/// optimum is positive.
fn phase_one(system: &FeasibilitySystem) -> Option<Tableau> {
    let m = system.rows();
    let n = system.vars;
    let cols = n + m;

    let mut rows = Vec::with_capacity(m);
    for (i, (coeffs, b)) in system.matrix.iter().zip(&system.rhs).enumerate() {
        let flip = b.is_negative();
        let mut row: Vec<Rational> = Vec::with_capacity(cols + 1);
        row.extend(coeffs.iter().map(|a| if flip { -a } else { a.clone() }));
        row.extend((0..m).map(|k| if k == i { Rational::from_integer(1.into()) } else { Rational::zero() }));
        row.push(if flip { -b } else { b.clone() });
        rows.push(row);
    }

    // Cost is the sum of artificials; with the artificials basic, the reduced
    // cost of an original column is minus its column sum.
    let mut reduced = vec![Rational::zero(); cols + 1];
    for row in &rows {
        for j in 0..n {
            reduced[j] -= &row[j];
        }
        reduced[cols] -= &row[cols];
    }

    let mut tableau = Tableau { rows, basis: (n..cols).collect(), reduced, cols };
    // Phase I is bounded below by zero, so the run always reaches optimality.
    let finished = tableau.run(cols);
    debug_assert!(finished);
    if !tableau.reduced[cols].is_zero() {
        return None;
    }
    tableau.drive_out_artificials(n);
    tableau.truncate_columns(n);
    Some(tableau)
}

impl Tableau {
    /// Bland-rule iterations over columns `0..allowed`. Returns `false` on
    /// unboundedness.
    fn run(&mut self, allowed: usize) -> bool {
        loop {
            let Some(enter) = (0..allowed).find(|&j| self.reduced[j].is_negative()) else {
                return true;
            };
            let rhs = self.cols;
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[rhs] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((best, best_ratio)) => {
                        ratio < *best_ratio || (ratio == *best_ratio && self.basis[i] < self.basis[*best])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, enter),
                None => return false,
            }
        }
    }

    fn pivot(&mut self, pr: usize, pc: usize) {
        let inv = Rational::from_integer(1.into()) / &self.rows[pr][pc];
        for v in self.rows[pr].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[pr]);
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != pr {
                eliminate(row, &pivot_row, pc);
            }
        }
        eliminate(&mut self.reduced, &pivot_row, pc);
        self.rows[pr] = pivot_row;
        self.basis[pr] = pc;
    }

    /// After a zero-cost phase I, swaps remaining artificial basics for
    /// original columns, dropping rows that turn out to be redundant.
    fn drive_out_artificials(&mut self, n: usize) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= n {
                match (0..n).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    fn truncate_columns(&mut self, n: usize) {
        let rhs = self.cols;
        for row in self.rows.iter_mut() {
            let b = std::mem::take(&mut row[rhs]);
            row.truncate(n);
            row.push(b);
        }
        self.cols = n;
        self.reduced = vec![Rational::zero(); n + 1];
    }

    fn set_objective(&mut self, cost: &[Rational]) {
        let mut reduced: Vec<Rational> = cost.to_vec();
        reduced.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (r, a) in reduced.iter_mut().zip(row) {
                if !a.is_zero() {
                    *r -= cb * a;
                }
            }
        }
        self.reduced = reduced;
    }

    fn assignment(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < self.cols {
                x[b] = row[self.cols].clone();
            }
        }
        x
    }
}

fn eliminate(row: &mut [Rational], pivot_row: &[Rational], pc: usize) {
    if row[pc].is_zero() {
        return;
    }
    let factor = row[pc].clone();
    for (v, p) in row.iter_mut().zip(pivot_row) {
        if !p.is_zero() {
            *v -= &factor * p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn sys(rows: &[&[i64]], rhs: &[i64]) -> FeasibilitySystem {
        let vars = rows.first().map_or(0, |r| r.len());
        FeasibilitySystem::new(
            rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect(),
            rhs.iter().map(|&v| int(v)).collect(),
            vars,
        )
        .unwrap()
    }

    #[test]
    fn symmetric_pair_is_feasible_at_half() {
        let s = sys(&[&[1, 1], &[1, -1]], &[1, 0]);
        assert_eq!(solve_feasibility(&s), Feasibility::Feasible(vec![ratio(1, 2), ratio(1, 2)]));
    }

    #[test]
    fn sign_contradiction_is_infeasible() {
        assert_eq!(solve_feasibility(&sys(&[&[1]], &[-1])), Feasibility::Infeasible);
    }

    #[test]
    fn midpoint_of_unit_interval() {
        // lambda_1 * (-1) + lambda_2 * 1 = 0, lambda_1 + lambda_2 = 1
        let s = sys(&[&[1, 1], &[-1, 1]], &[1, 0]);
        assert_eq!(solve_feasibility(&s), Feasibility::Feasible(vec![ratio(1, 2), ratio(1, 2)]));
    }

    #[test]
    fn optimize_on_simplex_edge() {
        let s = sys(&[&[1, 1]], &[1]);
        let max = optimize_linear(&s, &[int(1), int(0)], Direction::Maximize).unwrap();
        let min = optimize_linear(&s, &[int(1), int(0)], Direction::Minimize).unwrap();
        assert!(matches!(max, LinearOptimum::Optimum { ref value, .. } if *value == int(1)));
        assert!(matches!(min, LinearOptimum::Optimum { ref value, .. } if *value == int(0)));
    }

    #[test]
    fn optimize_infeasible_and_unbounded() {
        let s = sys(&[&[1]], &[-1]);
        assert_eq!(optimize_linear(&s, &[int(1)], Direction::Maximize).unwrap(), LinearOptimum::Infeasible);
        let ray = sys(&[&[1, -1]], &[0]);
        assert_eq!(
            optimize_linear(&ray, &[int(1), int(0)], Direction::Maximize).unwrap(),
            LinearOptimum::Unbounded
        );
    }

    #[test]
    fn dimension_errors() {
        assert!(FeasibilitySystem::new(vec![vec![int(1)]], vec![], 1).is_err());
        assert!(FeasibilitySystem::new(vec![vec![int(1), int(2)]], vec![int(0)], 1).is_err());
        let s = sys(&[&[1, 1]], &[1]);
        assert!(optimize_linear(&s, &[int(1)], Direction::Minimize).is_err());
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let s = sys(&[&[1, 1, 0], &[2, 2, 0], &[0, 0, 1]], &[1, 2, 3]);
        match solve_feasibility(&s) {
            Feasibility::Feasible(x) => assert!(s.is_satisfied_by(&x)),
            Feasibility::Infeasible => panic!("expected feasible"),
        }
        let opt = optimize_linear(&s, &[int(1), int(-1), int(0)], Direction::Maximize).unwrap();
        assert!(matches!(opt, LinearOptimum::Optimum { ref value, .. } if *value == int(1)));
    }

    #[test]
    fn empty_system_is_feasible_at_origin() {
        let s = FeasibilitySystem::with_vars(3);
        assert_eq!(solve_feasibility(&s), Feasibility::Feasible(vec![int(0), int(0), int(0)]));
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's classic cycling instance in equality form (slacks x5..x7).
        let q = |n, d| ratio(n, d);
        let s = FeasibilitySystem::new(
            vec![
                vec![q(1, 4), int(-60), q(-1, 25), int(9), int(1), int(0), int(0)],
                vec![q(1, 2), int(-90), q(-1, 50), int(3), int(0), int(1), int(0)],
                vec![int(0), int(0), int(1), int(0), int(0), int(0), int(1)],
            ],
            vec![int(0), int(0), int(1)],
            7,
        )
        .unwrap();
        let c = [q(-3, 4), int(150), q(-1, 50), int(6), int(0), int(0), int(0)];
        match optimize_linear(&s, &c, Direction::Minimize).unwrap() {
            LinearOptimum::Optimum { value, assignment } => {
                assert_eq!(value, q(-1, 20));
                assert!(s.is_satisfied_by(&assignment));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
