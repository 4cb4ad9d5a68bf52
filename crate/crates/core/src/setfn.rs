use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{self, Rational};
use crate::{Error, GroundSet, Partition, Result, SubsetMask};

/// Failure of the local form `f(X+u) + f(X+v) - f(X) - f(X+u+v) >= 0`
/// (or its reverse for supermodularity), with `u < v` outside `X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalWitness {
    #[serde(rename = "X")]
    pub set: SubsetMask,
    pub u: usize,
    pub v: usize,
    /// `f(X+u) + f(X+v) - f(X) - f(X+u+v)`.
    #[serde(with = "rational::as_str")]
    pub gap: Rational,
}

impl fmt::Display for LocalWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "X={}, u={}, v={}, f(X+u)+f(X+v)-f(X)-f(X+u+v)={}",
            self.set,
            self.u,
            self.v,
            rational::format(&self.gap)
        )
    }
}

/// A single-element step `X -> X+element` along which monotonicity fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepWitness {
    #[serde(rename = "X")]
    pub set: SubsetMask,
    pub element: usize,
}

/// A real-valued function on all subsets of a finite ground set.
///
/// Values are held densely, `values[mask]`, and never change after construction.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SetFunctionRepr", into = "SetFunctionRepr")]
pub struct SetFunction {
    ground: GroundSet,
    values: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct SetFunctionRepr {
    n: usize,
    #[serde(with = "rational::vec_as_str")]
    values: Vec<Rational>,
}

impl TryFrom<SetFunctionRepr> for SetFunction {
    type Error = Error;
    fn try_from(r: SetFunctionRepr) -> Result<Self> {
        SetFunction::new(GroundSet::new(r.n)?, r.values)
    }
}

impl From<SetFunction> for SetFunctionRepr {
    fn from(f: SetFunction) -> Self {
        SetFunctionRepr {
            n: f.ground.size(),
            values: f.values,
        }
    }
}

impl fmt::Debug for SetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(rational::format).collect();
        write!(
            f,
            "SetFunction(n={}, [{}])",
            self.ground.size(),
            vals.join(", ")
        )
    }
}

impl SetFunction {
    /// Raw constructor; any value on the empty set is accepted.
    pub fn new(ground: GroundSet, values: Vec<Rational>) -> Result<Self> {
        if values.len() != ground.num_subsets() {
            return Err(Error::ValueCount {
                expected: ground.num_subsets(),
                got: values.len(),
            });
        }
        Ok(SetFunction { ground, values })
    }

    /// Like [`SetFunction::new`] but rejects `f(∅) != 0`.
    pub fn normalized(ground: GroundSet, values: Vec<Rational>) -> Result<Self> {
        let f = Self::new(ground, values)?;
        f.require_normalized()?;
        Ok(f)
    }

    pub fn from_fn(ground: GroundSet, mut value: impl FnMut(SubsetMask) -> Rational) -> Self {
        SetFunction {
            ground,
            values: ground.subsets().map(&mut value).collect(),
        }
    }

    pub fn zero(ground: GroundSet) -> Self {
        Self::from_fn(ground, |_| Rational::zero())
    }

    /// Function of the cardinality only: `f(X) = g[|X|]`.
    pub fn from_cardinality(ground: GroundSet, g: &[Rational]) -> Result<Self> {
        if g.len() != ground.size() + 1 {
            return Err(Error::ValueCount {
                expected: ground.size() + 1,
                got: g.len(),
            });
        }
        Ok(Self::from_fn(ground, |x| g[x.len()].clone()))
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.size()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    /// `f(X)`. Panics if `x` has bits outside the ground set.
    pub fn value(&self, x: SubsetMask) -> &Rational {
        &self.values[x.index()]
    }

    pub fn get(&self, x: SubsetMask) -> Result<&Rational> {
        self.ground.check(x)?;
        Ok(self.value(x))
    }

    pub fn total(&self) -> &Rational {
        self.value(self.ground.full())
    }

    pub fn is_normalized(&self) -> bool {
        self.values[0].is_zero()
    }

    pub fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized(rational::format(&self.values[0])))
        }
    }

    /// `f - f(∅)`.
    pub fn shift_to_normalized(&self) -> SetFunction {
        let c = self.values[0].clone();
        self.map(|v| v - &c)
    }

    pub fn map(&self, mut op: impl FnMut(&Rational) -> Rational) -> SetFunction {
        SetFunction {
            ground: self.ground,
            values: self.values.iter().map(&mut op).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> SetFunction {
        self.map(|v| v * c)
    }

    fn require_same_ground(&self, other: &SetFunction) -> Result<()> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch(self.n(), other.n()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &SetFunction) -> Result<SetFunction> {
        self.require_same_ground(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn checked_sub(&self, other: &SetFunction) -> Result<SetFunction> {
        self.require_same_ground(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(
        &self,
        other: &SetFunction,
        op: impl Fn(&Rational, &Rational) -> Rational,
    ) -> SetFunction {
        SetFunction {
            ground: self.ground,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| op(a, b))
                .collect(),
        }
    }

    /// Pointwise `sum_i c_i * f_i`.
    pub fn linear_combine(terms: &[(Rational, &SetFunction)]) -> Result<SetFunction> {
        let (_, first) = terms
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty linear combination".into()))?;
        let mut values = vec![Rational::zero(); first.ground.num_subsets()];
        for (c, f) in terms {
            first.require_same_ground(f)?;
            if c.is_zero() {
                continue;
            }
            for (acc, v) in values.iter_mut().zip(&f.values) {
                *acc += c * v;
            }
        }
        Ok(SetFunction {
            ground: first.ground,
            values,
        })
    }

    /// `max_X |f(X)|`.
    pub fn norm_inf(&self) -> Rational {
        self.values
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// `g(I) = f(union of classes indexed by I)` on a ground set of size `q`.
    pub fn quotient(&self, partition: &Partition) -> Result<SetFunction> {
        if partition.ground() != self.ground {
            return Err(Error::GroundMismatch(self.n(), partition.ground().size()));
        }
        let q = GroundSet::new(partition.len())?;
        Ok(SetFunction::from_fn(q, |sel| {
            self.value(partition.expand(sel)).clone()
        }))
    }

    /// `g(X) = f(X) + f(J \ X) + shift`.
    pub fn symmetrize(&self, shift: &Rational) -> SetFunction {
        let g = self.ground;
        SetFunction::from_fn(g, |x| self.value(x) + self.value(g.complement(x)) + shift)
    }

    /// `f(X+u) + f(X+v) - f(X) - f(X+u+v)`.
    pub fn local_gap(&self, x: SubsetMask, u: usize, v: usize) -> Rational {
        self.value(x.with(u)) + self.value(x.with(v))
            - self.value(x)
            - self.value(x.with(u).with(v))
    }

    fn first_local(&self, bad: impl Fn(&Rational) -> bool) -> Option<LocalWitness> {
        let n = self.n();
        for x in self.ground.subsets() {
            for u in (0..n).filter(|&u| !x.contains(u)) {
                for v in (u + 1..n).filter(|&v| !x.contains(v)) {
                    let gap = self.local_gap(x, u, v);
                    if bad(&gap) {
                        return Some(LocalWitness { set: x, u, v, gap });
                    }
                }
            }
        }
        None
    }

    /// First `(X, u, v)` in mask order with a negative local gap.
    pub fn submodularity_violation(&self) -> Option<LocalWitness> {
        self.first_local(|g| g.is_negative())
    }

    pub fn is_submodular(&self) -> bool {
        self.submodularity_violation().is_none()
    }

    pub fn supermodularity_violation(&self) -> Option<LocalWitness> {
        self.first_local(|g| g.is_positive())
    }

    pub fn is_supermodular(&self) -> bool {
        self.supermodularity_violation().is_none()
    }

    pub fn modularity_violation(&self) -> Option<LocalWitness> {
        self.first_local(|g| !g.is_zero())
    }

    pub fn is_modular(&self) -> bool {
        self.modularity_violation().is_none()
    }

    fn first_step(&self, bad: impl Fn(&Rational, &Rational) -> bool) -> Option<StepWitness> {
        let n = self.n();
        for x in self.ground.subsets() {
            for u in (0..n).filter(|&u| !x.contains(u)) {
                if bad(self.value(x), self.value(x.with(u))) {
                    return Some(StepWitness { set: x, element: u });
                }
            }
        }
        None
    }

    /// First step `X -> X+u` with `f(X) > f(X+u)`.
    pub fn increase_violation(&self) -> Option<StepWitness> {
        self.first_step(|a, b| a > b)
    }

    pub fn is_increasing(&self) -> bool {
        self.increase_violation().is_none()
    }

    /// First step `X -> X+u` with `f(X) < f(X+u)`.
    pub fn decrease_violation(&self) -> Option<StepWitness> {
        self.first_step(|a, b| a < b)
    }

    pub fn is_decreasing(&self) -> bool {
        self.decrease_violation().is_none()
    }

    /// `f(A) + f(B) == f(A ∩ B) + f(A ∪ B)`.
    pub fn is_modular_on_pair(&self, a: SubsetMask, b: SubsetMask) -> bool {
        self.value(a) + self.value(b) == self.value(a & b) + self.value(a | b)
    }

    /// First mask where `f` is negative.
    pub fn negativity_violation(&self) -> Option<SubsetMask> {
        self.ground.subsets().find(|&x| self.value(x).is_negative())
    }
}

impl Add for &SetFunction {
    type Output = SetFunction;
    /// Panics on mismatched ground sets; see [`SetFunction::checked_add`].
    fn add(self, rhs: &SetFunction) -> SetFunction {
        self.checked_add(rhs).expect("ground sets differ")
    }
}

impl Sub for &SetFunction {
    type Output = SetFunction;
    fn sub(self, rhs: &SetFunction) -> SetFunction {
        self.checked_sub(rhs).expect("ground sets differ")
    }
}

impl Neg for &SetFunction {
    type Output = SetFunction;
    fn neg(self) -> SetFunction {
        self.map(|v| -v)
    }
}
