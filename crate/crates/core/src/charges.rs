//! Charges (finitely additive set functions) bounding an increasing
//! submodular function from above and below, and the associated duals.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::lp::{Direction, LinearProgram, LpStatus, Relation, VarBound};
use crate::rational::{self, Rational};
use crate::{Error, GroundSet, Result, SetFunction, SubsetMask};

/// A modular function given by its singleton values; `X -> sum_{x ∈ X} atoms[x]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ChargeRepr", into = "ChargeRepr")]
pub struct Charge {
    ground: GroundSet,
    atoms: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct ChargeRepr {
    n: usize,
    #[serde(with = "rational::vec_as_str")]
    atoms: Vec<Rational>,
}

impl TryFrom<ChargeRepr> for Charge {
    type Error = Error;
    fn try_from(r: ChargeRepr) -> Result<Self> {
        Charge::new(GroundSet::new(r.n)?, r.atoms)
    }
}

impl From<Charge> for ChargeRepr {
    fn from(c: Charge) -> Self {
        ChargeRepr {
            n: c.ground.size(),
            atoms: c.atoms,
        }
    }
}

impl Charge {
    pub fn new(ground: GroundSet, atoms: Vec<Rational>) -> Result<Self> {
        if atoms.len() != ground.size() {
            return Err(Error::ValueCount {
                expected: ground.size(),
                got: atoms.len(),
            });
        }
        Ok(Charge { ground, atoms })
    }

    pub fn zero(ground: GroundSet) -> Self {
        Charge {
            ground,
            atoms: vec![Rational::zero(); ground.size()],
        }
    }

    /// Reads the singleton values of `f`; only a faithful representation when `f` is modular.
    pub fn from_singletons(f: &SetFunction) -> Self {
        Charge {
            ground: f.ground(),
            atoms: (0..f.n())
                .map(|i| f.value(SubsetMask::singleton(i)) - f.value(SubsetMask::EMPTY))
                .collect(),
        }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn atoms(&self) -> &[Rational] {
        &self.atoms
    }

    pub fn value(&self, x: SubsetMask) -> Rational {
        x.elements().map(|i| &self.atoms[i]).sum()
    }

    pub fn total(&self) -> Rational {
        self.atoms.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.atoms.iter().all(|a| !a.is_negative())
    }

    pub fn to_set_function(&self) -> SetFunction {
        SetFunction::from_fn(self.ground, |x| self.value(x))
    }
}

fn require_increasing_submodular(f: &SetFunction) -> Result<()> {
    f.require_normalized()?;
    if let Some(w) = f.increase_violation() {
        return Err(Error::NotIncreasing {
            from: w.set,
            element: w.element,
        });
    }
    if let Some(w) = f.submodularity_violation() {
        return Err(Error::NotSubmodular(w));
    }
    Ok(())
}

/// Smallest nonnegative charge majorizing a nonnegative submodular `f` with
/// `f(∅) = 0`; on a finite set its atoms are `f({x})`.
pub fn upper_charge(f: &SetFunction) -> Result<Charge> {
    f.require_normalized()?;
    if let Some(x) = f.negativity_violation() {
        return Err(Error::Negative(x));
    }
    if let Some(w) = f.submodularity_violation() {
        return Err(Error::NotSubmodular(w));
    }
    Ok(Charge::from_singletons(f))
}

/// `f^{eta*}(X) = f(J \ X) + eta(X) - f(J)` for `f` increasing submodular with `f <= eta`.
pub fn dual_wrt(f: &SetFunction, eta: &Charge) -> Result<SetFunction> {
    if f.ground() != eta.ground() {
        return Err(Error::GroundMismatch(f.n(), eta.ground().size()));
    }
    require_increasing_submodular(f)?;
    let eta_f = eta.to_set_function();
    if let Some(x) = f.ground().subsets().find(|&x| f.value(x) > eta_f.value(x)) {
        return Err(Error::NotMajorized(x));
    }
    let ground = f.ground();
    let top = f.total();
    Ok(SetFunction::from_fn(ground, |x| {
        f.value(ground.complement(x)) + eta_f.value(x) - top
    }))
}

/// Dual with respect to the upper charge: `f*(X) = f(J \ X) + sum_{x ∈ X} f({x}) - f(J)`.
pub fn canonical_dual(f: &SetFunction) -> Result<SetFunction> {
    let eta = upper_charge(f)?;
    dual_wrt(f, &eta)
}

/// Largest charge `a` with `f - a` increasing, computed as `f - f**`.
pub fn lower_charge(f: &SetFunction) -> Result<Charge> {
    let dual = canonical_dual(f)?;
    let double = canonical_dual(&dual)?;
    let diff = f - &double;
    if let Some(w) = diff.modularity_violation() {
        return Err(Error::Internal(format!("f - f** is not modular: {w}")));
    }
    Ok(Charge::from_singletons(&diff))
}

/// Outcome of the LP cross-check of [`lower_charge`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalityCheck {
    pub lp_optimum: Rational,
    pub lp_atoms: Vec<Rational>,
    pub closed_form: Charge,
    pub agrees: bool,
}

/// Maximizes `sum_x a_x` subject to `a(J) - a(X) <= f(J) - f(X)` for all `X`
/// (for submodular `f` exactly the charges with `f - a` increasing) and
/// compares optimum and optimizer against [`lower_charge`].
pub fn verify_lower_charge_maximality(f: &SetFunction) -> Result<MaximalityCheck> {
    let closed_form = lower_charge(f)?;
    let ground = f.ground();
    let n = ground.size();
    let mut lp = LinearProgram::new(n, Direction::Maximize);
    for i in 0..n {
        lp.set_bound(i, VarBound::Free);
        lp.set_objective(i, rational::int(1));
    }
    let full = ground.full();
    for x in ground.subsets() {
        let row: Vec<(usize, Rational)> = ground
            .complement(x)
            .elements()
            .map(|i| (i, rational::int(1)))
            .collect();
        if row.is_empty() {
            continue;
        }
        lp.add_constraint(row, Relation::Le, f.value(full) - f.value(x))?;
    }
    let sol = lp.solve()?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::UnexpectedLpStatus(sol.status.as_str()));
    }
    let lp_optimum = sol.value.expect("optimal has a value");
    let lp_atoms = sol.assignment;
    let agrees = lp_optimum == closed_form.value(full) && lp_atoms == closed_form.atoms;
    Ok(MaximalityCheck {
        lp_optimum,
        lp_atoms,
        closed_form,
        agrees,
    })
}
