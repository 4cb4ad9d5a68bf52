//! Two-phase revised simplex over exact rationals.
//!
//! The basis inverse is kept dense; columns are sparse. Pricing is Dantzig's
//! rule, falling back to Bland's rule whenever a run of degenerate pivots
//! gets long, which rules out cycling. A caller-supplied feasible basis
//! skips the first phase.

use num_traits::{One, Signed, Zero};

use super::{Certificate, Direction, LinearProgram, LpSolution, LpStatus, Relation, VarBound};
use crate::rational::Rational;
use crate::Result;

const DEGENERATE_RUN: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Column {
    Structural { var: usize, negated: bool },
    Slack,
    Artificial,
}

struct Tableau {
    cols: Vec<Vec<(usize, Rational)>>,
    kinds: Vec<Column>,
    basis: Vec<usize>,
    in_basis: Vec<bool>,
    binv: Vec<Vec<Rational>>,
    xb: Vec<Rational>,
    pi: Vec<Rational>,
    pivots: usize,
}

enum Outcome {
    Optimal,
    Unbounded {
        entering: usize,
        direction: Vec<Rational>,
    },
}

impl Tableau {
    fn dot_col(&self, y: &[Rational], j: usize) -> Rational {
        let mut s = Rational::zero();
        for (i, a) in &self.cols[j] {
            if !y[*i].is_zero() {
                s += &y[*i] * a;
            }
        }
        s
    }

    fn ftran(&self, j: usize) -> Vec<Rational> {
        let m = self.basis.len();
        let mut u = vec![Rational::zero(); m];
        for (r, row) in self.binv.iter().enumerate() {
            let mut s = Rational::zero();
            for (i, a) in &self.cols[j] {
                if !row[*i].is_zero() {
                    s += &row[*i] * a;
                }
            }
            u[r] = s;
        }
        debug_assert_eq!(u.len(), m);
        u
    }

    fn reset_pi(&mut self, cost: &[Rational]) {
        let m = self.basis.len();
        let mut pi = vec![Rational::zero(); m];
        for (r, &b) in self.basis.iter().enumerate() {
            if cost[b].is_zero() {
                continue;
            }
            for (i, v) in self.binv[r].iter().enumerate() {
                if !v.is_zero() {
                    pi[i] += &cost[b] * v;
                }
            }
        }
        self.pi = pi;
    }

    /// Pivots column `q` into basis position `p`, given `u = B^{-1} a_q` and
    /// the reduced cost `dq` of `q` under the current prices.
    fn pivot(&mut self, q: usize, p: usize, u: &[Rational], dq: &Rational) {
        let up = u[p].clone();
        let theta = &self.xb[p] / &up;
        for (r, ur) in u.iter().enumerate() {
            if r != p && !ur.is_zero() {
                let delta = ur * &theta;
                self.xb[r] -= delta;
            }
        }
        self.xb[p] = theta;

        let inv = up.recip();
        let mut nz = Vec::new();
        for (i, v) in self.binv[p].iter_mut().enumerate() {
            if !v.is_zero() {
                *v *= &inv;
                nz.push(i);
            }
        }
        let pivot_row = std::mem::take(&mut self.binv[p]);
        for (r, ur) in u.iter().enumerate() {
            if r == p || ur.is_zero() {
                continue;
            }
            let row = &mut self.binv[r];
            for &i in &nz {
                row[i] -= ur * &pivot_row[i];
            }
        }
        if !dq.is_zero() {
            for &i in &nz {
                self.pi[i] += dq * &pivot_row[i];
            }
        }
        self.binv[p] = pivot_row;

        self.in_basis[self.basis[p]] = false;
        self.in_basis[q] = true;
        self.basis[p] = q;
        self.pivots += 1;
    }

    fn run(&mut self, cost: &[Rational]) -> Outcome {
        self.reset_pi(cost);
        let mut degenerate = 0usize;
        loop {
            let bland = degenerate >= DEGENERATE_RUN;
            let mut entering: Option<(usize, Rational)> = None;
            for (j, cj) in cost.iter().enumerate() {
                if self.in_basis[j] || self.kinds[j] == Column::Artificial {
                    continue;
                }
                let d = cj - self.dot_col(&self.pi, j);
                if !d.is_negative() {
                    continue;
                }
                match &entering {
                    Some((_, best)) if d >= *best => {}
                    _ => entering = Some((j, d)),
                }
                if bland {
                    break;
                }
            }
            let Some((q, dq)) = entering else {
                return Outcome::Optimal;
            };
            let u = self.ftran(q);
            let mut leave: Option<(usize, Rational)> = None;
            for (r, ur) in u.iter().enumerate() {
                if !ur.is_positive() {
                    continue;
                }
                let ratio = &self.xb[r] / ur;
                let better = match &leave {
                    None => true,
                    Some((lr, lt)) => {
                        ratio < *lt || (ratio == *lt && self.basis[r] < self.basis[*lr])
                    }
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            let Some((p, theta)) = leave else {
                return Outcome::Unbounded {
                    entering: q,
                    direction: u,
                };
            };
            if theta.is_zero() {
                degenerate += 1;
            } else {
                degenerate = 0;
            }
            self.pivot(q, p, &u, &dq);
        }
    }

    /// Pivots basic artificials (all at zero) out wherever a real column can
    /// replace them. Rows where none can are redundant and keep their
    /// artificial, which then stays at zero.
    fn drive_out_artificials(&mut self) {
        for p in 0..self.basis.len() {
            if self.kinds[self.basis[p]] != Column::Artificial {
                continue;
            }
            let candidate = (0..self.cols.len()).find(|&j| {
                !self.in_basis[j]
                    && self.kinds[j] != Column::Artificial
                    && !self.dot_col(&self.binv[p], j).is_zero()
            });
            if let Some(q) = candidate {
                let u = self.ftran(q);
                self.pivot(q, p, &u, &Rational::zero());
            }
        }
    }

    /// Replaces the starting basis by the columns of the variables in `vars`
    /// if they form a feasible basis; otherwise leaves it untouched.
    fn install_basis(&mut self, vars: &[usize], var_col: &[usize], lp: &LinearProgram) -> bool {
        let m = self.basis.len();
        if vars.len() != m
            || vars
                .iter()
                .any(|&v| v >= var_col.len() || lp.bounds[v] != VarBound::NonNegative)
        {
            return false;
        }
        let basis: Vec<usize> = vars.iter().map(|&v| var_col[v]).collect();
        let mut seen = vec![false; self.cols.len()];
        if basis.iter().any(|&j| std::mem::replace(&mut seen[j], true)) {
            return false;
        }
        let cols: Vec<&Vec<(usize, Rational)>> = basis.iter().map(|&j| &self.cols[j]).collect();
        let Some(binv) = invert(&cols, m) else {
            return false;
        };
        let xb: Vec<Rational> = binv
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.xb)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        if xb.iter().any(|v: &Rational| v.is_negative()) {
            return false;
        }
        for &j in &self.basis {
            self.in_basis[j] = false;
        }
        for &j in &basis {
            self.in_basis[j] = true;
        }
        self.basis = basis;
        self.binv = binv;
        self.xb = xb;
        true
    }

    fn standard_point(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.cols.len()];
        for (r, &b) in self.basis.iter().enumerate() {
            x[b] = self.xb[r].clone();
        }
        x
    }

    fn to_original(&self, x: &[Rational], num_vars: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); num_vars];
        for (j, kind) in self.kinds.iter().enumerate() {
            if let Column::Structural { var, negated } = kind {
                if *negated {
                    out[*var] -= &x[j];
                } else {
                    out[*var] += &x[j];
                }
            }
        }
        out
    }
}

/// Inverse of the `m x m` matrix whose columns are `cols`, by Gauss-Jordan
/// elimination, or `None` if it is singular.
fn invert(cols: &[&Vec<(usize, Rational)>], m: usize) -> Option<Vec<Vec<Rational>>> {
    let mut a = vec![vec![Rational::zero(); m]; m];
    for (k, col) in cols.iter().enumerate() {
        for (i, v) in col.iter() {
            a[*i][k] = v.clone();
        }
    }
    let mut inv = vec![vec![Rational::zero(); m]; m];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    for c in 0..m {
        let p = (c..m).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        inv.swap(c, p);
        let scale = a[c][c].recip();
        for v in a[c].iter_mut().chain(inv[c].iter_mut()) {
            if !v.is_zero() {
                *v *= &scale;
            }
        }
        let (pa, pi) = (a[c].clone(), inv[c].clone());
        for r in 0..m {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for (k, v) in pa.iter().enumerate() {
                if !v.is_zero() {
                    a[r][k] -= &f * v;
                }
            }
            for (k, v) in pi.iter().enumerate() {
                if !v.is_zero() {
                    inv[r][k] -= &f * v;
                }
            }
        }
    }
    Some(inv)
}

pub(super) fn solve(lp: &LinearProgram, hint: Option<&[usize]>) -> Result<LpSolution> {
    let m = lp.constraints.len();
    let n = lp.num_vars;
    let mut cols: Vec<Vec<(usize, Rational)>> = Vec::new();
    let mut kinds = Vec::new();
    let mut std_cost = Vec::new();
    let flip = lp.direction == Direction::Maximize;

    // Row signs making every right-hand side nonnegative.
    let signs: Vec<bool> = lp.constraints.iter().map(|c| c.rhs.is_negative()).collect();

    let mut by_var: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
    for (i, c) in lp.constraints.iter().enumerate() {
        for (j, a) in &c.row {
            let a = if signs[i] { -a } else { a.clone() };
            by_var[*j].push((i, a));
        }
    }
    let mut var_col = vec![usize::MAX; n];
    for (j, col) in by_var.into_iter().enumerate() {
        let c = if flip {
            -&lp.objective[j]
        } else {
            lp.objective[j].clone()
        };
        if lp.bounds[j] == VarBound::Free {
            cols.push(col.iter().map(|(i, a)| (*i, -a)).collect());
            kinds.push(Column::Structural {
                var: j,
                negated: true,
            });
            std_cost.push(-&c);
        }
        var_col[j] = cols.len();
        cols.push(col);
        kinds.push(Column::Structural {
            var: j,
            negated: false,
        });
        std_cost.push(c);
    }

    let mut basis = vec![usize::MAX; m];
    let mut b = Vec::with_capacity(m);
    for (i, c) in lp.constraints.iter().enumerate() {
        b.push(if signs[i] { -&c.rhs } else { c.rhs.clone() });
        let coef = match c.relation {
            Relation::Le => 1,
            Relation::Ge => -1,
            Relation::Eq => 0,
        } * if signs[i] { -1 } else { 1 };
        if coef != 0 {
            cols.push(vec![(i, Rational::from_integer(coef.into()))]);
            kinds.push(Column::Slack);
            std_cost.push(Rational::zero());
            if coef == 1 {
                basis[i] = cols.len() - 1;
            }
        }
    }
    let mut phase1_cost = vec![Rational::zero(); cols.len()];
    for (i, slot) in basis.iter_mut().enumerate() {
        if *slot == usize::MAX {
            cols.push(vec![(i, Rational::one())]);
            kinds.push(Column::Artificial);
            std_cost.push(Rational::zero());
            phase1_cost.push(Rational::one());
            *slot = cols.len() - 1;
        }
    }
    let has_artificials = kinds.contains(&Column::Artificial);

    let mut in_basis = vec![false; cols.len()];
    for &j in &basis {
        in_basis[j] = true;
    }
    let mut binv = vec![vec![Rational::zero(); m]; m];
    for (i, row) in binv.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    let mut t = Tableau {
        cols,
        kinds,
        basis,
        in_basis,
        binv,
        xb: b,
        pi: Vec::new(),
        pivots: 0,
    };

    let orig_dual = |pi: &[Rational], negate: bool| -> Vec<Rational> {
        pi.iter()
            .zip(&signs)
            .map(|(p, s)| if *s != negate { -p } else { p.clone() })
            .collect()
    };

    let warm = hint.is_some_and(|h| t.install_basis(h, &var_col, lp));
    if has_artificials && !warm {
        t.run(&phase1_cost);
        let infeasibility: Rational = t
            .basis
            .iter()
            .zip(&t.xb)
            .filter(|(j, _)| t.kinds[**j] == Column::Artificial)
            .map(|(_, v)| v.clone())
            .sum();
        if infeasibility.is_positive() {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                value: None,
                assignment: Vec::new(),
                certificate: Certificate::Farkas(orig_dual(&t.pi, false)),
                pivots: t.pivots,
            });
        }
        t.drive_out_artificials();
    }

    match t.run(&std_cost) {
        Outcome::Optimal => {
            let x = t.to_original(&t.standard_point(), n);
            let value = lp.objective_value(&x);
            Ok(LpSolution {
                status: LpStatus::Optimal,
                value: Some(value),
                assignment: x,
                certificate: Certificate::Dual(orig_dual(&t.pi, flip)),
                pivots: t.pivots,
            })
        }
        Outcome::Unbounded {
            entering,
            direction,
        } => {
            let x = t.to_original(&t.standard_point(), n);
            let mut d = vec![Rational::zero(); t.cols.len()];
            d[entering] = Rational::one();
            for (r, &bj) in t.basis.iter().enumerate() {
                d[bj] = -&direction[r];
            }
            let ray = t.to_original(&d, n);
            Ok(LpSolution {
                status: LpStatus::Unbounded,
                value: None,
                assignment: x,
                certificate: Certificate::Ray(ray),
                pivots: t.pivots,
            })
        }
    }
}
