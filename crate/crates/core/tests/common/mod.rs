//! Independent reference implementations and random instance generators
//! shared by the integration tests.

#![allow(dead_code)]

use monodec::graphs::WeightedGraph;
use monodec::lp::{Direction, LinearProgram, LpStatus, Relation, VarBound};
use monodec::rational::{frac, int};
use monodec::{GroundSet, Rational, SetFunction, SubsetMask};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn ground(n: usize) -> GroundSet {
    GroundSet::new(n).unwrap()
}

/// `p/q` with `p` in `-range..=range` and `q` in `1..=4`.
pub fn small_rational(rng: &mut ChaCha8Rng, range: i64) -> Rational {
    frac(rng.random_range(-range..=range), rng.random_range(1..=4))
}

pub fn nonneg_rational(rng: &mut ChaCha8Rng, range: i64) -> Rational {
    frac(rng.random_range(0..=range), rng.random_range(1..=4))
}

pub fn random_function(rng: &mut ChaCha8Rng, n: usize) -> SetFunction {
    SetFunction::from_fn(ground(n), |x| {
        if x.is_empty() {
            int(0)
        } else {
            small_rational(rng, 9)
        }
    })
}

/// `f(X) = sum of alpha_A over A meeting X`, evaluated directly.
pub fn coverage_from(alpha: &[(SubsetMask, Rational)], n: usize) -> SetFunction {
    SetFunction::from_fn(ground(n), |x| {
        alpha
            .iter()
            .filter(|(a, _)| a.intersects(x))
            .map(|(_, v)| v.clone())
            .sum()
    })
}

/// Sparse nonnegative coefficients on random nonempty sets.
pub fn random_coverage_alpha(rng: &mut ChaCha8Rng, n: usize) -> Vec<(SubsetMask, Rational)> {
    let terms = rng.random_range(1..=2 * n);
    (0..terms)
        .map(|_| {
            let a = SubsetMask(rng.random_range(1..(1u32 << n)));
            (a, nonneg_rational(rng, 6))
        })
        .collect()
}

pub fn random_coverage(rng: &mut ChaCha8Rng, n: usize) -> SetFunction {
    let alpha = random_coverage_alpha(rng, n);
    coverage_from(&alpha, n)
}

/// Coverage function minus a nonnegative charge.
pub fn random_weakly_alternating(rng: &mut ChaCha8Rng, n: usize) -> SetFunction {
    let cov = random_coverage(rng, n);
    let charge: Vec<Rational> = (0..n).map(|_| nonneg_rational(rng, 6)).collect();
    SetFunction::from_fn(ground(n), |x| {
        cov.value(x) - x.elements().map(|e| charge[e].clone()).sum::<Rational>()
    })
}

/// A mix of arbitrary functions, coverage functions, and coverage functions
/// with one coefficient pushed negative.
pub fn random_mixed(rng: &mut ChaCha8Rng, n: usize) -> SetFunction {
    match rng.random_range(0..4) {
        0 | 1 => random_function(rng, n),
        2 => random_coverage(rng, n),
        _ => {
            let mut alpha = random_coverage_alpha(rng, n);
            let a = SubsetMask(rng.random_range(1..(1u32 << n)));
            alpha.push((a, -frac(1, rng.random_range(1..=4))));
            coverage_from(&alpha, n)
        }
    }
}

/// Coverage coefficients through the explicit inverse matrix:
/// `alpha_A = sum over X with A | X = J of (-1)^(|A & X| - 1) f(X)`.
pub fn naive_coefficients(f: &SetFunction) -> Vec<Rational> {
    let g = f.ground();
    let full = g.full();
    let mut alpha = vec![Rational::zero(); g.num_subsets()];
    for a in g.subsets().skip(1) {
        let mut s = Rational::zero();
        for x in g.subsets() {
            if a | x != full {
                continue;
            }
            let sign = if (a & x).len() % 2 == 1 { 1 } else { -1 };
            s += f.value(x) * int(sign);
        }
        alpha[a.index()] = s;
    }
    alpha
}

/// Global submodularity by all pairs.
pub fn is_submodular_global(f: &SetFunction) -> bool {
    let g = f.ground();
    g.subsets().all(|x| {
        g.subsets()
            .all(|y| f.value(x) + f.value(y) >= f.value(x & y) + f.value(x | y))
    })
}

/// `||psi||_+` from the textbook formulation: one variable per nonempty set,
/// submodularity over all pairs and monotonicity over all nested pairs, for
/// both parts, solved as a primal LP.
pub fn four_set_sum_norm(psi: &SetFunction) -> Rational {
    let g = psi.ground();
    let vars = g.num_subsets() - 1;
    let mut lp = LinearProgram::new(vars, Direction::Minimize);
    for j in 0..vars {
        lp.set_bound(j, VarBound::Free);
    }
    lp.set_objective(g.full().index() - 1, Rational::one());
    let term = |m: SubsetMask, c: i64| -> Option<(usize, Rational)> {
        (!m.is_empty()).then(|| (m.index() - 1, int(c)))
    };
    for x in g.subsets() {
        for y in g.subsets() {
            if x.bits() < y.bits() {
                let row: Vec<(usize, Rational)> =
                    [term(x, 1), term(y, 1), term(x & y, -1), term(x | y, -1)]
                        .into_iter()
                        .flatten()
                        .collect();
                let gap = psi.value(x) + psi.value(y) - psi.value(x & y) - psi.value(x | y);
                lp.add_constraint(row.clone(), Relation::Ge, int(0))
                    .unwrap();
                lp.add_constraint(row, Relation::Le, gap).unwrap();
            }
            if x != y && x.is_subset_of(y) {
                let row: Vec<(usize, Rational)> =
                    [term(y, 1), term(x, -1)].into_iter().flatten().collect();
                lp.add_constraint(row.clone(), Relation::Ge, int(0))
                    .unwrap();
                lp.add_constraint(row, Relation::Ge, psi.value(y) - psi.value(x))
                    .unwrap();
            }
        }
    }
    let sol = lp.solve().unwrap();
    assert_eq!(sol.status, LpStatus::Optimal);
    lp.check_solution(&sol).unwrap();
    sol.value.unwrap()
}

/// Maximum cut by scanning every side.
pub fn brute_max_cut(g: &WeightedGraph) -> Rational {
    let d = g.cut_function();
    d.values().iter().max().cloned().unwrap()
}

/// Random simple graph with weights `a/b`, `a <= 4`, `b <= 3`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> WeightedGraph {
    let mut g = WeightedGraph::new(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(0.6) {
                g.add_edge(u, v, frac(rng.random_range(0..=4), rng.random_range(1..=3)))
                    .unwrap();
            }
        }
    }
    g
}

/// `sum over I of (-1)^|I| f(A0 | union of A_i, i in I)`, term by term.
pub fn naive_alt_sum(f: &SetFunction, a0: SubsetMask, tuple: &[SubsetMask]) -> Rational {
    let mut s = Rational::zero();
    for bits in 0u32..(1 << tuple.len()) {
        let mut x = a0;
        for (i, a) in tuple.iter().enumerate() {
            if bits >> i & 1 == 1 {
                x = x | *a;
            }
        }
        let sign = if bits.count_ones() % 2 == 0 { 1 } else { -1 };
        s += f.value(x) * int(sign);
    }
    s
}
