//! The intersection-indicator basis `phi_A(X) = [X ∩ A ≠ ∅]` and coverage
//! coefficients.
//!
//! Every normalized `f` has a unique expansion `f = sum_{A ≠ ∅} alpha_A phi_A`;
//! `f` is infinite-alternating (a coverage function) iff all `alpha_A >= 0`.
//! Coefficients are computed with the reflection
//! `g(Y) = f(J) - f(J \ Y)`, whose Möbius transform is `alpha`, in `O(n 2^n)`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::alternating::{self, AlternatingWitness};
use crate::rational::{self, Rational};
use crate::{Error, GroundSet, Result, SetFunction, SubsetMask};

/// `alpha_A` for every nonempty `A`, stored densely by mask (slot 0 unused).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CoefficientsRepr", into = "CoefficientsRepr")]
pub struct CoverageCoefficients {
    ground: GroundSet,
    alpha: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct CoefficientsRepr {
    n: usize,
    alpha: BTreeMap<u32, String>,
}

impl TryFrom<CoefficientsRepr> for CoverageCoefficients {
    type Error = Error;
    fn try_from(r: CoefficientsRepr) -> Result<Self> {
        let mut c = CoverageCoefficients::zero(GroundSet::new(r.n)?);
        for (mask, v) in r.alpha {
            let mask = SubsetMask(mask);
            c.ground.check(mask)?;
            if mask.is_empty() {
                return Err(Error::InvalidArgument(
                    "coefficient on the empty set".into(),
                ));
            }
            c.set(mask, rational::parse(&v)?);
        }
        Ok(c)
    }
}

impl From<CoverageCoefficients> for CoefficientsRepr {
    fn from(c: CoverageCoefficients) -> Self {
        CoefficientsRepr {
            n: c.ground.size(),
            alpha: c
                .nonzero()
                .map(|(a, v)| (a.bits(), rational::format(v)))
                .collect(),
        }
    }
}

impl CoverageCoefficients {
    pub fn zero(ground: GroundSet) -> Self {
        CoverageCoefficients {
            ground,
            alpha: vec![Rational::zero(); ground.num_subsets()],
        }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn get(&self, a: SubsetMask) -> &Rational {
        &self.alpha[a.index()]
    }

    /// Panics for `a = ∅` or masks outside the ground set.
    pub fn set(&mut self, a: SubsetMask, value: Rational) {
        assert!(!a.is_empty(), "no coefficient for the empty set");
        self.alpha[a.index()] = value;
    }

    /// `(A, alpha_A)` for nonempty `A`, in mask order.
    pub fn iter(&self) -> impl Iterator<Item = (SubsetMask, &Rational)> {
        self.alpha
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, v)| (SubsetMask(i as u32), v))
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (SubsetMask, &Rational)> {
        self.iter().filter(|(_, v)| !v.is_zero())
    }

    pub fn min(&self) -> Option<(SubsetMask, &Rational)> {
        self.iter().min_by(|a, b| a.1.cmp(b.1))
    }

    pub fn first_negative(&self) -> Option<SubsetMask> {
        self.iter().find(|(_, v)| v.is_negative()).map(|(a, _)| a)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.first_negative().is_none()
    }

    /// Largest `|A|` with `alpha_A != 0` (0 for the zero function).
    pub fn max_support_size(&self) -> usize {
        self.nonzero().map(|(a, _)| a.len()).max().unwrap_or(0)
    }

    pub fn positive_part(&self) -> CoverageCoefficients {
        self.map(|v| {
            if v.is_positive() {
                v.clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// `max(-alpha, 0)`, so that `alpha = positive_part - negative_part`.
    pub fn negative_part(&self) -> CoverageCoefficients {
        self.map(|v| {
            if v.is_negative() {
                -v
            } else {
                Rational::zero()
            }
        })
    }

    fn map(&self, op: impl Fn(&Rational) -> Rational) -> CoverageCoefficients {
        CoverageCoefficients {
            ground: self.ground,
            alpha: self.alpha.iter().map(op).collect(),
        }
    }
}

/// In place `h(Y) <- sum_{B ⊆ Y} h(B)`.
pub fn subset_zeta(values: &mut [Rational]) {
    debug_assert!(values.len().is_power_of_two());
    let mut bit = 1;
    while bit < values.len() {
        for y in 0..values.len() {
            if y & bit != 0 {
                let lower = values[y ^ bit].clone();
                values[y] += lower;
            }
        }
        bit <<= 1;
    }
}

/// Inverse of [`subset_zeta`]: `h(A) <- sum_{B ⊆ A} (-1)^{|A \ B|} h(B)`.
pub fn subset_mobius(values: &mut [Rational]) {
    debug_assert!(values.len().is_power_of_two());
    let mut bit = 1;
    while bit < values.len() {
        for y in 0..values.len() {
            if y & bit != 0 {
                let lower = values[y ^ bit].clone();
                values[y] -= lower;
            }
        }
        bit <<= 1;
    }
}

/// `phi_A(X) = 1` if `X` meets `A`, else 0.
pub fn extremal(ground: GroundSet, a: SubsetMask) -> Result<SetFunction> {
    ground.check(a)?;
    if a.is_empty() {
        return Err(Error::InvalidArgument("phi_A needs a nonempty A".into()));
    }
    Ok(SetFunction::from_fn(ground, |x| {
        rational::int(x.intersects(a) as i64)
    }))
}

/// Unique `alpha` with `f = sum_A alpha_A phi_A`.
pub fn to_coefficients(f: &SetFunction) -> Result<CoverageCoefficients> {
    f.require_normalized()?;
    let ground = f.ground();
    let top = f.total();
    let mut g: Vec<Rational> = ground
        .subsets()
        .map(|y| top - f.value(ground.complement(y)))
        .collect();
    subset_mobius(&mut g);
    debug_assert!(g[0].is_zero());
    Ok(CoverageCoefficients { ground, alpha: g })
}

/// `f(X) = sum_{A ∩ X ≠ ∅} alpha_A`, computed as `G(J) - G(J \ X)` with `G`
/// the subset-sum of `alpha`.
pub fn from_coefficients(alpha: &CoverageCoefficients) -> SetFunction {
    let ground = alpha.ground;
    let mut sums = alpha.alpha.clone();
    sums[0] = Rational::zero();
    subset_zeta(&mut sums);
    let top = sums[ground.full().index()].clone();
    SetFunction::from_fn(ground, |x| &top - &sums[ground.complement(x).index()])
}

/// Whether `alpha_A = 0` for every `|A| >= k0`. Only meaningful for
/// nonnegative coefficients, where it is equivalent to all disjoint
/// alternating sums vanishing for `k >= k0`.
pub fn support_size_bound_check(alpha: &CoverageCoefficients, k0: usize) -> Result<bool> {
    if let Some(a) = alpha.first_negative() {
        return Err(Error::NegativeCoefficient(a));
    }
    Ok(alpha.nonzero().all(|(a, _)| a.len() < k0))
}

/// `f = P(alpha+) - P(alpha-)`: both parts infinite-alternating with
/// disjoint coefficient supports.
pub fn diff_decompose_canonical(f: &SetFunction) -> Result<(SetFunction, SetFunction)> {
    let alpha = to_coefficients(f)?;
    Ok((
        from_coefficients(&alpha.positive_part()),
        from_coefficients(&alpha.negative_part()),
    ))
}

/// Result of the uniform construction `phi2 = m * sum_{A ≠ ∅} phi_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformDiffDecomposition {
    pub phi1: SetFunction,
    pub phi2: SetFunction,
    /// Largest disjoint alternating sum of `f`, clamped below at 0.
    pub m: Rational,
    /// Tuple attaining the unclamped maximum.
    pub witness: AlternatingWitness,
}

/// `m = max V_f` over pairwise-disjoint tuples with nonempty `A_1..A_k`,
/// `1 <= k <= n`; `phi2 = m * sum_A phi_A`, `phi1 = f + phi2`. When `m <= 0`,
/// `f` is already infinite-alternating and `phi2 = 0`.
pub fn diff_decompose_uniform(f: &SetFunction) -> Result<UniformDiffDecomposition> {
    f.require_normalized()?;
    let ground = f.ground();
    let witness = alternating::max_disjoint_alt_sum(f);
    let m = if witness.value.is_positive() {
        witness.value.clone()
    } else {
        Rational::zero()
    };
    // sum of all phi_A at X is the number of nonempty sets meeting X.
    let all = (1i64 << ground.size()) - 1;
    let phi2 = SetFunction::from_fn(ground, |x| {
        let missing = (1i64 << (ground.size() - x.len())) - 1;
        &m * rational::int(all - missing)
    });
    let phi1 = f + &phi2;
    Ok(UniformDiffDecomposition {
        phi1,
        phi2,
        m,
        witness,
    })
}
