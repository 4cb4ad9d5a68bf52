//! Alternating sums `V_f(A_0; A_1, .., A_k)` and the `k`-alternating hierarchy.
//!
//! Weak (pairwise-disjoint) `k`-alternation is the primitive decision procedure.
//! Ordinary `k`-alternation is decided as "weakly `l`-alternating for every
//! `l <= k`"; direct enumeration of arbitrary tuples is only offered for tiny
//! instances as a cross-check.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coverage::{self, CoverageCoefficients};
use crate::rational::{self, Rational};
use crate::{Error, GroundSet, Partition, Result, SetFunction, SubsetMask};

/// A tuple `(A_0; A_1, .., A_k)` with a positive alternating sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternatingWitness {
    #[serde(rename = "A0")]
    pub a0: SubsetMask,
    pub tuple: Vec<SubsetMask>,
    #[serde(with = "rational::as_str")]
    pub value: Rational,
}

impl fmt::Display for AlternatingWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V({};", self.a0)?;
        for (i, a) in self.tuple.iter().enumerate() {
            write!(f, "{}{a}", if i == 0 { " " } else { ", " })?;
        }
        write!(f, ") = {}", rational::format(&self.value))
    }
}

/// Largest number of weak-tuple assignments we consider practical, `(k+2)^n`.
pub const WEAK_ENUMERATION_LIMIT: u128 = 100_000_000;

/// Number of assignments `(k+2)^n` scanned by a weak `k`-alternation check.
pub fn weak_enumeration_cost(n: usize, k: usize) -> u128 {
    (k as u128 + 2).saturating_pow(n as u32)
}

fn alt_sum_unchecked(f: &SetFunction, a0: SubsetMask, tuple: &[SubsetMask]) -> Rational {
    let k = tuple.len();
    let mut unions = vec![a0; 1 << k];
    let mut sum = Rational::zero();
    for sel in 0usize..1 << k {
        if sel > 0 {
            let low = sel.trailing_zeros() as usize;
            unions[sel] = unions[sel & (sel - 1)] | tuple[low];
        }
        if sel.count_ones() % 2 == 0 {
            sum += f.value(unions[sel]);
        } else {
            sum -= f.value(unions[sel]);
        }
    }
    sum
}

/// `V_f(A_0; A_1, .., A_k) = sum over K ⊆ [k] of (-1)^|K| f(A_0 ∪ ⋃_{i∈K} A_i)`.
pub fn alt_sum(f: &SetFunction, a0: SubsetMask, tuple: &[SubsetMask]) -> Result<Rational> {
    if tuple.is_empty() {
        return Err(Error::InvalidArgument(
            "alternating sum needs k >= 1".into(),
        ));
    }
    if tuple.len() > 20 {
        return Err(Error::InvalidArgument(
            "alternating sum limited to k <= 20".into(),
        ));
    }
    let g = f.ground();
    g.check(a0)?;
    for &a in tuple {
        g.check(a)?;
    }
    Ok(alt_sum_unchecked(f, a0, tuple))
}

/// The same value through the recursion
/// `V(A_0; A_1..A_k) = V(A_0; A_1..A_{k-1}) - V(A_0 ∪ A_k; A_1..A_{k-1})`,
/// bottoming out at `V(A_0; A_1) = f(A_0) - f(A_0 ∪ A_1)`.
pub fn alt_sum_recursive(
    f: &SetFunction,
    a0: SubsetMask,
    tuple: &[SubsetMask],
) -> Result<Rational> {
    if tuple.len() < 2 {
        return Err(Error::InvalidArgument("recursive form needs k >= 2".into()));
    }
    alt_sum(f, a0, tuple)?;
    fn go(f: &SetFunction, a0: SubsetMask, tuple: &[SubsetMask]) -> Rational {
        match tuple {
            [] => f.value(a0).clone(),
            [a1] => f.value(a0) - f.value(a0 | *a1),
            [rest @ .., last] => go(f, a0, rest) - go(f, a0 | *last, rest),
        }
    }
    Ok(go(f, a0, tuple))
}

/// Walks every assignment of ground elements to `A_0, .., A_k` or "unused",
/// as a base-`(k+2)` counter with element 0 as the lowest digit, skipping
/// tuples with an empty `A_i` (`i >= 1`). `visit` sees each tuple and its
/// alternating sum; returning `true` stops the walk at that tuple. With
/// `sorted_only`, tuples are visited once per reordering of `A_1..A_k` (the
/// alternating sum is symmetric in them): only those with increasing minima.
fn scan_disjoint(
    f: &SetFunction,
    k: usize,
    sorted_only: bool,
    mut visit: impl FnMut(SubsetMask, &[SubsetMask], &Rational) -> bool,
) -> Option<AlternatingWitness> {
    let n = f.n();
    let unused = k + 1;
    let mut digits = vec![0usize; n];
    let mut parts = vec![SubsetMask::EMPTY; k + 1];
    loop {
        parts.iter_mut().for_each(|p| *p = SubsetMask::EMPTY);
        for (e, &d) in digits.iter().enumerate() {
            if d != unused {
                parts[d] = parts[d].with(e);
            }
        }
        let visible = parts[1..].iter().all(|p| !p.is_empty())
            && (!sorted_only
                || parts[1..]
                    .windows(2)
                    .all(|w| w[0].bits().trailing_zeros() < w[1].bits().trailing_zeros()));
        if visible {
            let v = alt_sum_unchecked(f, parts[0], &parts[1..]);
            if visit(parts[0], &parts[1..], &v) {
                return Some(AlternatingWitness {
                    a0: parts[0],
                    tuple: parts[1..].to_vec(),
                    value: v,
                });
            }
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return None;
            }
            digits[pos] += 1;
            if digits[pos] <= unused {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    Ok(())
}

/// First pairwise-disjoint tuple with `V_f > 0`, or `None` if `f` is weakly `k`-alternating.
pub fn weak_k_alternating_violation(
    f: &SetFunction,
    k: usize,
) -> Result<Option<AlternatingWitness>> {
    f.require_normalized()?;
    check_k(k)?;
    if k > f.n() {
        // No k pairwise-disjoint nonempty sets exist.
        return Ok(None);
    }
    Ok(scan_disjoint(f, k, false, |_, _, v| v.is_positive()))
}

pub fn is_weakly_k_alternating(f: &SetFunction, k: usize) -> Result<bool> {
    Ok(weak_k_alternating_violation(f, k)?.is_none())
}

/// Largest alternating sum over pairwise-disjoint tuples with nonempty
/// `A_1..A_k`, for `1 <= k <= n`, together with the first tuple attaining it.
pub fn max_disjoint_alt_sum(f: &SetFunction) -> AlternatingWitness {
    let mut best: Option<AlternatingWitness> = None;
    for k in 1..=f.n() {
        scan_disjoint(f, k, true, |a0, tuple, v| {
            if best.as_ref().is_none_or(|b| *v > b.value) {
                best = Some(AlternatingWitness {
                    a0,
                    tuple: tuple.to_vec(),
                    value: v.clone(),
                });
            }
            false
        });
    }
    best.expect("k = 1 always has a tuple")
}

/// Decides `k`-alternation as weak `l`-alternation for all `l = 1..=k`.
pub fn k_alternating_violation(f: &SetFunction, k: usize) -> Result<Option<AlternatingWitness>> {
    f.require_normalized()?;
    check_k(k)?;
    for l in 1..=k {
        if let Some(w) = weak_k_alternating_violation(f, l)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

pub fn is_k_alternating(f: &SetFunction, k: usize) -> Result<bool> {
    Ok(k_alternating_violation(f, k)?.is_none())
}

/// Direct search over arbitrary (not necessarily disjoint) tuples; `(2^n)^(k+1)`
/// tuples, so restricted to `n <= 5`, `k <= 3`.
pub fn k_alternating_violation_exhaustive(
    f: &SetFunction,
    k: usize,
) -> Result<Option<AlternatingWitness>> {
    f.require_normalized()?;
    check_k(k)?;
    if f.n() > 5 || k > 3 {
        return Err(Error::InvalidArgument(
            "exhaustive alternation check is limited to n <= 5, k <= 3".into(),
        ));
    }
    let size = f.ground().num_subsets() as u64;
    let total = size.pow(k as u32 + 1);
    let mut tuple = vec![SubsetMask::EMPTY; k];
    for code in 0..total {
        let mut c = code;
        let a0 = SubsetMask((c % size) as u32);
        c /= size;
        for t in tuple.iter_mut() {
            *t = SubsetMask((c % size) as u32);
            c /= size;
        }
        let v = alt_sum_unchecked(f, a0, &tuple);
        if v.is_positive() {
            return Ok(Some(AlternatingWitness {
                a0,
                tuple,
                value: v,
            }));
        }
    }
    Ok(None)
}

/// On a finite ground set, infinite-alternating means all coverage
/// coefficients are nonnegative.
pub fn is_infinite_alternating(f: &SetFunction) -> Result<bool> {
    Ok(coverage::to_coefficients(f)?.is_nonnegative())
}

/// Weak `k`-alternation for `k = 2..=n`; larger `k` admit no tuples with
/// nonempty pairwise-disjoint `A_1..A_k`.
pub fn weakly_infinite_alternating_violation(
    f: &SetFunction,
) -> Result<Option<AlternatingWitness>> {
    f.require_normalized()?;
    for k in 2..=f.n() {
        if let Some(w) = weak_k_alternating_violation(f, k)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Decided through coverage coefficients: `f` is weakly infinite-alternating
/// exactly when it is a coverage function plus a charge, i.e. when every
/// coefficient on a set of two or more elements is nonnegative.
pub fn is_weakly_infinite_alternating(f: &SetFunction) -> Result<bool> {
    f.require_normalized()?;
    let alpha = coverage::to_coefficients(f)?;
    let weak = alpha
        .nonzero()
        .all(|(a, v)| a.len() < 2 || !v.is_negative());
    Ok(weak)
}

/// `sum of phi_A over nonempty A with |A| <= l, minus phi_X` for `|X| = l + 1`:
/// `l`-alternating but not `(l+1)`-alternating.
pub fn make_ell_not_ell_plus_one(
    ground: GroundSet,
    ell: usize,
    x: SubsetMask,
) -> Result<SetFunction> {
    ground.check(x)?;
    if ell == 0 {
        return Err(Error::InvalidArgument("ell must be at least 1".into()));
    }
    if x.len() != ell + 1 {
        return Err(Error::InvalidArgument(format!(
            "|X| = {} but ell + 1 = {}",
            x.len(),
            ell + 1
        )));
    }
    let mut alpha = CoverageCoefficients::zero(ground);
    for a in ground.subsets().skip(1) {
        if a.len() <= ell {
            alpha.set(a, Rational::one());
        }
    }
    alpha.set(x, -Rational::one());
    Ok(coverage::from_coefficients(&alpha))
}

/// Rank of the partition matroid with unit bounds: number of classes met by `X`.
pub fn make_partition_matroid_rank(classes: &Partition) -> SetFunction {
    SetFunction::from_fn(classes.ground(), |x| {
        let met = classes.classes().iter().filter(|c| c.intersects(x)).count();
        rational::int(met as i64)
    })
}
