//! Optimal monotonic sum/diff decompositions, c-bounded feasibility and the
//! canonical decomposition of a weakly infinite-alternating function.
//!
//! The decomposition LPs have one variable per nonempty subset and many more
//! constraints than variables, so they are solved through their dual: the
//! dual has one equality row per subset, and its optimal prices are an
//! optimal `phi1`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Certificate, Direction, LinearProgram, LpStatus, Relation};
use crate::alternating::{is_weakly_infinite_alternating, weakly_infinite_alternating_violation};
use crate::charges::Charge;
use crate::coverage::{from_coefficients, to_coefficients};
use crate::rational::{self, Rational};
use crate::{Error, GroundSet, Result, SetFunction, SubsetMask};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecompositionKind {
    Sum,
    Diff,
}

impl DecompositionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DecompositionKind::Sum => "sum",
            DecompositionKind::Diff => "diff",
        }
    }
}

/// `psi = phi1 + phi2` (sum) or `psi = phi1 - phi2` (diff).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub kind: DecompositionKind,
    #[serde(with = "rational::as_str")]
    pub objective: Rational,
    pub phi1: SetFunction,
    pub phi2: SetFunction,
}

impl Decomposition {
    /// Builds the decomposition of `psi` with increasing part `phi1`.
    pub fn from_phi1(
        psi: &SetFunction,
        phi1: SetFunction,
        kind: DecompositionKind,
    ) -> Result<Self> {
        let phi2 = match kind {
            DecompositionKind::Sum => psi.checked_sub(&phi1)?,
            DecompositionKind::Diff => phi1.checked_sub(psi)?,
        };
        Ok(Decomposition {
            kind,
            objective: phi1.total().clone(),
            phi1,
            phi2,
        })
    }

    pub fn reconstruct(&self) -> Result<SetFunction> {
        match self.kind {
            DecompositionKind::Sum => self.phi1.checked_add(&self.phi2),
            DecompositionKind::Diff => self.phi1.checked_sub(&self.phi2),
        }
    }

    /// Checks every defining property against `psi`; returns a description
    /// of the first failure.
    pub fn violation(&self, psi: &SetFunction) -> Option<String> {
        if self.reconstruct().ok().as_ref() != Some(psi) {
            return Some("parts do not reconstruct psi".into());
        }
        if !self.phi1.is_normalized() || !self.phi2.is_normalized() {
            return Some("parts are not zero at the empty set".into());
        }
        if let Some(w) = self.phi1.submodularity_violation() {
            return Some(format!(
                "phi1 not submodular at {} ({}, {})",
                w.set, w.u, w.v
            ));
        }
        if let Some(w) = self.phi1.increase_violation() {
            return Some(format!("phi1 decreases at {} + {}", w.set, w.element));
        }
        if let Some(w) = self.phi2.submodularity_violation() {
            return Some(format!(
                "phi2 not submodular at {} ({}, {})",
                w.set, w.u, w.v
            ));
        }
        let step = match self.kind {
            DecompositionKind::Sum => self.phi2.decrease_violation(),
            DecompositionKind::Diff => self.phi2.increase_violation(),
        };
        if let Some(w) = step {
            return Some(format!(
                "phi2 has the wrong monotonicity at {} + {}",
                w.set, w.element
            ));
        }
        if &self.objective != self.phi1.total() {
            return Some("objective differs from phi1(J)".into());
        }
        None
    }

    /// `max(||phi1||, ||phi2||)`.
    pub fn part_norm(&self) -> Rational {
        self.phi1.norm_inf().max(self.phi2.norm_inf())
    }
}

/// Rows `sum_X a_X x_X >= rhs` over the variables `x_X`, `X` nonempty, with
/// `x_{empty}` fixed at zero. Rows with the same left side keep the largest
/// right side.
struct Rows {
    rows: BTreeMap<Vec<(usize, i64)>, Rational>,
    contradiction: bool,
}

/// The function `sign * x + offset * psi` whose shape is being constrained.
#[derive(Clone, Copy)]
struct Form {
    sign: i64,
    offset: i64,
}

impl Rows {
    fn new() -> Self {
        Rows {
            rows: BTreeMap::new(),
            contradiction: false,
        }
    }

    fn push(&mut self, terms: &[(SubsetMask, i64)], rhs: Rational) {
        let mut merged: BTreeMap<usize, i64> = BTreeMap::new();
        for &(m, a) in terms {
            if !m.is_empty() {
                *merged.entry(m.index() - 1).or_insert(0) += a;
            }
        }
        let key: Vec<(usize, i64)> = merged.into_iter().filter(|&(_, a)| a != 0).collect();
        if key.is_empty() {
            if rhs.is_positive() {
                self.contradiction = true;
            }
            return;
        }
        match self.rows.get_mut(&key) {
            Some(old) if *old >= rhs => {}
            Some(old) => *old = rhs,
            None => {
                self.rows.insert(key, rhs);
            }
        }
    }

    fn submodular(&mut self, psi: &SetFunction, form: Form) {
        let ground = psi.ground();
        let n = ground.size();
        for x in ground.subsets() {
            for u in 0..n {
                if x.contains(u) {
                    continue;
                }
                for v in u + 1..n {
                    if x.contains(v) {
                        continue;
                    }
                    let s = form.sign;
                    let terms = [
                        (x.with(u), s),
                        (x.with(v), s),
                        (x, -s),
                        (x.with(u).with(v), -s),
                    ];
                    let rhs =
                        psi.local_gap(x, u, v) * Rational::from_integer((-form.offset).into());
                    self.push(&terms, rhs);
                }
            }
        }
    }

    /// `form(X + u) - form(X) >= 0` when `up`, else `<= 0`.
    fn monotone(&mut self, psi: &SetFunction, form: Form, up: bool) {
        let ground = psi.ground();
        let dir = if up { 1 } else { -1 };
        for x in ground.subsets() {
            for u in 0..ground.size() {
                if x.contains(u) {
                    continue;
                }
                let s = form.sign * dir;
                let delta = psi.value(x.with(u)) - psi.value(x);
                let rhs = delta * Rational::from_integer((-form.offset * dir).into());
                self.push(&[(x.with(u), s), (x, -s)], rhs);
            }
        }
    }

    fn for_kind(psi: &SetFunction, kind: DecompositionKind) -> Self {
        let mut rows = Rows::new();
        let phi1 = Form { sign: 1, offset: 0 };
        rows.submodular(psi, phi1);
        rows.monotone(psi, phi1, true);
        match kind {
            DecompositionKind::Sum => {
                let phi2 = Form {
                    sign: -1,
                    offset: 1,
                };
                rows.submodular(psi, phi2);
                rows.monotone(psi, phi2, false);
            }
            DecompositionKind::Diff => {
                let phi2 = Form {
                    sign: 1,
                    offset: -1,
                };
                rows.submodular(psi, phi2);
                rows.monotone(psi, phi2, true);
            }
        }
        rows
    }

    /// One increasing row `x_X - x_{X - min X} >= ..` (or `x_X >= ..` for a
    /// singleton) per nonempty `X`: in the dual these columns form a feasible
    /// basis, with value one along the chain from `J` and zero elsewhere.
    fn chain_basis(&self, ground: GroundSet) -> Option<Vec<usize>> {
        let position: BTreeMap<&Vec<(usize, i64)>, usize> =
            self.rows.keys().enumerate().map(|(r, k)| (k, r)).collect();
        ground
            .subsets()
            .skip(1)
            .map(|x| {
                let rest = x.without(x.elements().next().expect("nonempty"));
                let key = if rest.is_empty() {
                    vec![(x.index() - 1, 1)]
                } else {
                    vec![(rest.index() - 1, -1), (x.index() - 1, 1)]
                };
                position.get(&key).copied()
            })
            .collect()
    }

    /// Minimizes `x_J` subject to the rows, via the dual program. Returns
    /// `None` when the rows are infeasible.
    fn minimize_total(&self, ground: GroundSet) -> Result<Option<Vec<Rational>>> {
        if self.contradiction {
            return Ok(None);
        }
        let vars = ground.num_subsets() - 1;
        let mut lp = LinearProgram::new(self.rows.len(), Direction::Maximize);
        let mut by_var: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); vars];
        for (r, (key, rhs)) in self.rows.iter().enumerate() {
            lp.set_objective(r, rhs.clone());
            for &(j, a) in key {
                by_var[j].push((r, Rational::from_integer(a.into())));
            }
        }
        let full = ground.full().index() - 1;
        for (j, row) in by_var.into_iter().enumerate() {
            let rhs = if j == full {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            };
            lp.add_constraint(row, Relation::Eq, rhs)?;
        }
        let sol = match self.chain_basis(ground) {
            Some(basis) => lp.solve_from_basis(&basis)?,
            None => lp.solve()?,
        };
        match (sol.status, sol.certificate) {
            (LpStatus::Optimal, Certificate::Dual(y)) => {
                let mut values = Vec::with_capacity(vars + 1);
                values.push(Rational::zero());
                values.extend(y);
                Ok(Some(values))
            }
            (LpStatus::Unbounded, _) => Ok(None),
            (status, _) => Err(Error::UnexpectedLpStatus(status.as_str())),
        }
    }
}

fn solve_kind(
    psi: &SetFunction,
    kind: DecompositionKind,
    rows: &Rows,
) -> Result<Option<Decomposition>> {
    let Some(values) = rows.minimize_total(psi.ground())? else {
        return Ok(None);
    };
    let phi1 = SetFunction::new(psi.ground(), values)?;
    let dec = Decomposition::from_phi1(psi, phi1, kind)?;
    if let Some(msg) = dec.violation(psi) {
        return Err(Error::Internal(format!(
            "LP decomposition failed verification: {msg}"
        )));
    }
    Ok(Some(dec))
}

/// Optimal monotonic sum-decomposition; its objective is `||psi||_+`.
pub fn optimal_sum_decomposition(psi: &SetFunction) -> Result<Decomposition> {
    psi.require_normalized()?;
    if let Some(w) = psi.submodularity_violation() {
        return Err(Error::NotSubmodular(w));
    }
    let rows = Rows::for_kind(psi, DecompositionKind::Sum);
    let dec = solve_kind(psi, DecompositionKind::Sum, &rows)?.ok_or_else(|| {
        Error::Internal("sum decomposition LP infeasible for submodular input".into())
    })?;
    if psi
        .ground()
        .subsets()
        .any(|x| dec.phi1.value(x) < psi.value(x))
    {
        return Err(Error::Internal("phi1 does not dominate psi".into()));
    }
    Ok(dec)
}

/// Optimal monotonic diff-decomposition; its objective is `||psi||_-`.
/// Every normalized function has one, submodular or not.
pub fn optimal_diff_decomposition(psi: &SetFunction) -> Result<Decomposition> {
    psi.require_normalized()?;
    let rows = Rows::for_kind(psi, DecompositionKind::Diff);
    solve_kind(psi, DecompositionKind::Diff, &rows)?
        .ok_or_else(|| Error::Internal("diff decomposition LP infeasible".into()))
}

/// A decomposition of the given kind whose parts both have sup-norm at most
/// `c * ||psi||`, or `None` if there is none.
pub fn c_bounded_feasible(
    psi: &SetFunction,
    kind: DecompositionKind,
    c: &Rational,
) -> Result<Option<Decomposition>> {
    psi.require_normalized()?;
    if c.is_negative() {
        return Err(Error::InvalidArgument(format!(
            "bound factor {} is negative",
            rational::format(c)
        )));
    }
    if kind == DecompositionKind::Sum && !psi.is_submodular() {
        return Ok(None);
    }
    let bound = c * psi.norm_inf();
    let mut rows = Rows::for_kind(psi, kind);
    // Both kinds need |x| <= bound and |x - psi| <= bound.
    for x in psi.ground().subsets().skip(1) {
        let p = psi.value(x);
        let lo = (-&bound).max(p - &bound);
        let hi = bound.clone().min(p + &bound);
        if lo > hi {
            return Ok(None);
        }
        rows.push(&[(x, 1)], lo);
        rows.push(&[(x, -1)], -hi);
    }
    solve_kind(psi, kind, &rows)
}

/// `psi = phi - mu` with `phi` infinite-alternating, `mu` a nonnegative
/// charge and `mu(a) * alpha_{a} = 0` for every element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalPair {
    pub phi: SetFunction,
    pub mu: Charge,
}

pub fn weakly_alt_canonical_decomposition(psi: &SetFunction) -> Result<CanonicalPair> {
    psi.require_normalized()?;
    if !is_weakly_infinite_alternating(psi)? {
        return Err(match weakly_infinite_alternating_violation(psi)? {
            Some(w) => Error::NotWeaklyInfiniteAlternating(w),
            None => {
                Error::Internal("coefficient and tuple tests for weak alternation disagree".into())
            }
        });
    }
    let ground = psi.ground();
    let start = psi.norm_inf() * Rational::from_integer(2.into());
    let mut atoms = vec![start; ground.size()];
    let mu0 = Charge::new(ground, atoms.clone())?;
    let mut alpha = to_coefficients(&psi.checked_add(&mu0.to_set_function())?)?;
    for (a, atom) in atoms.iter_mut().enumerate() {
        let single = SubsetMask::singleton(a);
        let t = atom.clone().min(alpha.get(single).clone());
        *atom -= &t;
        let rest = alpha.get(single) - &t;
        alpha.set(single, rest);
    }
    if let Some(a) = alpha.first_negative() {
        return Err(Error::Internal(format!(
            "negative coverage coefficient at {a}"
        )));
    }
    let pair = CanonicalPair {
        phi: from_coefficients(&alpha),
        mu: Charge::new(ground, atoms)?,
    };
    if pair.phi.checked_sub(&pair.mu.to_set_function())? != *psi {
        return Err(Error::Internal(
            "canonical pair does not reconstruct psi".into(),
        ));
    }
    Ok(pair)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SevenBoundReport {
    #[serde(with = "rational::as_str")]
    pub psi_norm: Rational,
    #[serde(with = "rational::as_str")]
    pub phi_total: Rational,
    #[serde(with = "rational::as_str")]
    pub mu_total: Rational,
    #[serde(with = "rational::as_str")]
    pub mu_norm: Rational,
    /// `||psi|| >= |phi(J) - mu(J)|`.
    pub difference_bound: bool,
    /// `||psi|| >= 3/4 phi(J) - 1/2 mu(J)`.
    pub weighted_bound: bool,
    /// `phi(J) <= 6 ||psi||`.
    pub phi_bound: bool,
    /// `||mu|| <= 7 ||psi||`.
    pub mu_bound: bool,
}

impl SevenBoundReport {
    pub fn all_hold(&self) -> bool {
        self.difference_bound && self.weighted_bound && self.phi_bound && self.mu_bound
    }
}

pub fn verify_seven_bound(psi: &SetFunction) -> Result<SevenBoundReport> {
    let pair = weakly_alt_canonical_decomposition(psi)?;
    let norm = psi.norm_inf();
    let phi_total = pair.phi.total().clone();
    let mu_total = pair.mu.total();
    let mu_norm = pair.mu.to_set_function().norm_inf();
    let r = |p: i64, q: i64| rational::frac(p, q);
    Ok(SevenBoundReport {
        difference_bound: norm >= (&phi_total - &mu_total).abs(),
        weighted_bound: norm >= &phi_total * r(3, 4) - &mu_total * r(1, 2),
        phi_bound: phi_total <= &norm * r(6, 1),
        mu_bound: mu_norm <= &norm * r(7, 1),
        psi_norm: norm,
        phi_total,
        mu_total,
        mu_norm,
    })
}
