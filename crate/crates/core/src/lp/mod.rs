//! Exact rational linear programming and the optimal monotonic
//! decompositions built on it.

mod decompose;
mod simplex;

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::rational::{self, Rational};
use crate::{Error, Result};

pub use decompose::{
    c_bounded_feasible, optimal_diff_decomposition, optimal_sum_decomposition, verify_seven_bound,
    weakly_alt_canonical_decomposition, CanonicalPair, Decomposition, DecompositionKind,
    SevenBoundReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarBound {
    NonNegative,
    Free,
}

/// `sum_j row_j x_j (relation) rhs`, with the row stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub row: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn activity(&self, x: &[Rational]) -> Rational {
        self.row.iter().map(|(j, a)| a * &x[*j]).sum()
    }
}

/// An LP over exact rationals. Variables default to nonnegative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    num_vars: usize,
    direction: Direction,
    objective: Vec<Rational>,
    bounds: Vec<VarBound>,
    constraints: Vec<Constraint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

impl LpStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            LpStatus::Optimal => "optimal",
            LpStatus::Infeasible => "infeasible",
            LpStatus::Unbounded => "unbounded",
        }
    }
}

/// Proof accompanying an [`LpSolution`].
///
/// Sign conventions are those of the textbook dual of the program as stated:
///
/// * `Dual(y)` (optimal): for a minimization `y_i >= 0` on `>=` rows, `y_i <= 0`
///   on `<=` rows, `A^T y <= c` (equality on free variables); for a
///   maximization the inequalities flip. Either way `b^T y` equals the optimum.
/// * `Ray(d)` (unbounded): `A d` satisfies the homogeneous constraints,
///   `d >= 0` on nonnegative variables, and `c^T d` improves the objective.
/// * `Farkas(y)` (infeasible): `y_i <= 0` on `<=` rows, `y_i >= 0` on `>=` rows,
///   `A^T y <= 0` (equality on free variables) and `b^T y > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Dual(Vec<Rational>),
    Ray(Vec<Rational>),
    Farkas(Vec<Rational>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Objective value when optimal.
    pub value: Option<Rational>,
    /// Optimal point, or a feasible point when unbounded; empty when infeasible.
    pub assignment: Vec<Rational>,
    pub certificate: Certificate,
    /// Simplex pivots over both phases.
    pub pivots: usize,
}

impl LinearProgram {
    pub fn new(num_vars: usize, direction: Direction) -> Self {
        LinearProgram {
            num_vars,
            direction,
            objective: vec![Rational::zero(); num_vars],
            bounds: vec![VarBound::NonNegative; num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn bounds(&self) -> &[VarBound] {
        &self.bounds
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn set_objective(&mut self, var: usize, coeff: Rational) {
        self.objective[var] = coeff;
    }

    pub fn set_bound(&mut self, var: usize, bound: VarBound) {
        self.bounds[var] = bound;
    }

    /// Adds a sparse row; repeated indices are summed and zeros dropped.
    pub fn add_constraint(
        &mut self,
        row: Vec<(usize, Rational)>,
        relation: Relation,
        rhs: Rational,
    ) -> Result<()> {
        let mut merged: BTreeMap<usize, Rational> = BTreeMap::new();
        for (j, a) in row {
            if j >= self.num_vars {
                return Err(Error::InvalidLp(format!(
                    "variable {j} out of range for {} variables",
                    self.num_vars
                )));
            }
            *merged.entry(j).or_insert_with(Rational::zero) += a;
        }
        let row = merged.into_iter().filter(|(_, a)| !a.is_zero()).collect();
        self.constraints.push(Constraint { row, relation, rhs });
        Ok(())
    }

    /// Adds a dense row of length `num_vars`.
    pub fn add_dense_constraint(
        &mut self,
        row: &[Rational],
        relation: Relation,
        rhs: Rational,
    ) -> Result<()> {
        if row.len() != self.num_vars {
            return Err(Error::InvalidLp(format!(
                "row has {} entries, expected {}",
                row.len(),
                self.num_vars
            )));
        }
        let sparse = row.iter().cloned().enumerate().collect();
        self.add_constraint(sparse, relation, rhs)
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// First violated constraint (or sign bound) at `x`, if any.
    pub fn feasibility_violation(&self, x: &[Rational]) -> Option<String> {
        if x.len() != self.num_vars {
            return Some(format!("point has {} entries", x.len()));
        }
        for (j, b) in self.bounds.iter().enumerate() {
            if *b == VarBound::NonNegative && x[j].is_negative() {
                return Some(format!("x[{j}] is negative"));
            }
        }
        for (i, c) in self.constraints.iter().enumerate() {
            let a = c.activity(x);
            let ok = match c.relation {
                Relation::Le => a <= c.rhs,
                Relation::Eq => a == c.rhs,
                Relation::Ge => a >= c.rhs,
            };
            if !ok {
                return Some(format!("constraint {i} violated"));
            }
        }
        None
    }

    /// `A^T y`.
    fn transpose_times(&self, y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.num_vars];
        for (c, yi) in self.constraints.iter().zip(y) {
            if yi.is_zero() {
                continue;
            }
            for (j, a) in &c.row {
                out[*j] += a * yi;
            }
        }
        out
    }

    fn rhs_dot(&self, y: &[Rational]) -> Rational {
        self.constraints
            .iter()
            .zip(y)
            .map(|(c, v)| &c.rhs * v)
            .sum()
    }

    pub fn solve(&self) -> Result<LpSolution> {
        simplex::solve(self, None)
    }

    /// Like [`solve`](Self::solve), but starts from the basis formed by the
    /// given nonnegative variables, one per constraint, skipping the first
    /// phase. Falls back to the two-phase method when they do not form a
    /// feasible basis.
    pub fn solve_from_basis(&self, basis: &[usize]) -> Result<LpSolution> {
        simplex::solve(self, Some(basis))
    }

    /// Checks that `sol` is internally consistent with this program: feasibility
    /// of the reported point and validity of the certificate, all exactly.
    pub fn check_solution(&self, sol: &LpSolution) -> std::result::Result<(), String> {
        let sign_ok = |rel: Relation, y: &Rational, flip: bool| -> bool {
            // Natural dual sign for a minimization; `flip` for a maximization.
            let (le_ok, ge_ok) = (!y.is_positive(), !y.is_negative());
            match (rel, flip) {
                (Relation::Eq, _) => true,
                (Relation::Le, false) | (Relation::Ge, true) => le_ok,
                (Relation::Ge, false) | (Relation::Le, true) => ge_ok,
            }
        };
        match (&sol.status, &sol.certificate) {
            (LpStatus::Optimal, Certificate::Dual(y)) => {
                if let Some(e) = self.feasibility_violation(&sol.assignment) {
                    return Err(format!("primal infeasible: {e}"));
                }
                if y.len() != self.constraints.len() {
                    return Err("dual has wrong length".into());
                }
                let flip = self.direction == Direction::Maximize;
                for (i, c) in self.constraints.iter().enumerate() {
                    if !sign_ok(c.relation, &y[i], flip) {
                        return Err(format!("dual sign wrong on constraint {i}"));
                    }
                }
                let aty = self.transpose_times(y);
                for (j, a) in aty.iter().enumerate() {
                    let c = &self.objective[j];
                    let ok = match (self.bounds[j], flip) {
                        (VarBound::Free, _) => a == c,
                        (VarBound::NonNegative, false) => a <= c,
                        (VarBound::NonNegative, true) => a >= c,
                    };
                    if !ok {
                        return Err(format!("reduced cost of x[{j}] has the wrong sign"));
                    }
                }
                let primal = self.objective_value(&sol.assignment);
                let dual = self.rhs_dot(y);
                if Some(&primal) != sol.value.as_ref() || primal != dual {
                    return Err(format!(
                        "duality gap: primal {} dual {}",
                        rational::format(&primal),
                        rational::format(&dual)
                    ));
                }
                Ok(())
            }
            (LpStatus::Unbounded, Certificate::Ray(d)) => {
                if let Some(e) = self.feasibility_violation(&sol.assignment) {
                    return Err(format!("base point infeasible: {e}"));
                }
                for (j, b) in self.bounds.iter().enumerate() {
                    if *b == VarBound::NonNegative && d[j].is_negative() {
                        return Err(format!("ray leaves the sign bound of x[{j}]"));
                    }
                }
                for (i, c) in self.constraints.iter().enumerate() {
                    let a = c.activity(d);
                    let ok = match c.relation {
                        Relation::Le => !a.is_positive(),
                        Relation::Eq => a.is_zero(),
                        Relation::Ge => !a.is_negative(),
                    };
                    if !ok {
                        return Err(format!("ray violates constraint {i}"));
                    }
                }
                let gain = self.objective_value(d);
                let improving = match self.direction {
                    Direction::Minimize => gain.is_negative(),
                    Direction::Maximize => gain.is_positive(),
                };
                if !improving {
                    return Err("ray does not improve the objective".into());
                }
                Ok(())
            }
            (LpStatus::Infeasible, Certificate::Farkas(y)) => {
                for (i, c) in self.constraints.iter().enumerate() {
                    if !sign_ok(c.relation, &y[i], false) {
                        return Err(format!("Farkas sign wrong on constraint {i}"));
                    }
                }
                let aty = self.transpose_times(y);
                for (j, a) in aty.iter().enumerate() {
                    let ok = match self.bounds[j] {
                        VarBound::Free => a.is_zero(),
                        VarBound::NonNegative => !a.is_positive(),
                    };
                    if !ok {
                        return Err(format!("Farkas column {j} has the wrong sign"));
                    }
                }
                if !self.rhs_dot(y).is_positive() {
                    return Err("Farkas rhs is not positive".into());
                }
                Ok(())
            }
            _ => Err("certificate kind does not match status".into()),
        }
    }
}
