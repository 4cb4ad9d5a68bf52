mod common;

use common::*;
use monodec::alternating::{
    alt_sum, alt_sum_recursive, is_infinite_alternating, is_k_alternating,
    is_weakly_infinite_alternating, is_weakly_k_alternating, k_alternating_violation_exhaustive,
    make_ell_not_ell_plus_one, make_partition_matroid_rank, weakly_infinite_alternating_violation,
};
use monodec::rational::int;
use monodec::{Partition, SubsetMask};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_tuple(rng: &mut ChaCha8Rng, n: usize, k: usize) -> (SubsetMask, Vec<SubsetMask>) {
    let top = 1u32 << n;
    let a0 = SubsetMask(rng.random_range(0..top));
    (
        a0,
        (0..k)
            .map(|_| SubsetMask(rng.random_range(0..top)))
            .collect(),
    )
}

#[test]
fn alternating_sum_matches_term_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 1..=6 {
        let f = random_function(&mut rng, n);
        for k in 1..=5 {
            for _ in 0..20 {
                let (a0, t) = random_tuple(&mut rng, n, k);
                let v = alt_sum(&f, a0, &t).unwrap();
                assert_eq!(v, naive_alt_sum(&f, a0, &t));
                if k >= 2 {
                    assert_eq!(v, alt_sum_recursive(&f, a0, &t).unwrap());
                }
            }
        }
    }
}

#[test]
fn strong_alternation_matches_exhaustive_tuples() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for n in 1..=3 {
        for _ in 0..30 {
            let f = random_mixed(&mut rng, n);
            for k in 1..=3 {
                let fast = is_k_alternating(&f, k).unwrap();
                let slow = k_alternating_violation_exhaustive(&f, k).unwrap().is_none();
                assert_eq!(fast, slow, "n={n} k={k} f={f:?}");
            }
        }
    }
}

#[test]
fn weak_infinite_alternation_coefficient_test_matches_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=5 {
        for i in 0..60 {
            let f = if i % 2 == 0 {
                random_weakly_alternating(&mut rng, n)
            } else {
                random_mixed(&mut rng, n)
            };
            let fast = is_weakly_infinite_alternating(&f).unwrap();
            let scan = weakly_infinite_alternating_violation(&f).unwrap().is_none();
            assert_eq!(fast, scan, "n={n} f={f:?}");
            if i % 2 == 0 {
                assert!(fast);
            }
        }
    }
}

#[test]
fn infinite_alternation_is_all_weak_levels() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 1..=4 {
        for _ in 0..40 {
            let f = random_mixed(&mut rng, n);
            let all_weak = (1..=n).all(|k| is_weakly_k_alternating(&f, k).unwrap());
            assert_eq!(is_infinite_alternating(&f).unwrap(), all_weak);
        }
    }
}

#[test]
fn ell_but_not_ell_plus_one() {
    for n in 2..=5 {
        let g = ground(n);
        for ell in 1..n {
            let x = SubsetMask((1u32 << (ell + 1)) - 1);
            let f = make_ell_not_ell_plus_one(g, ell, x).unwrap();
            assert!(is_k_alternating(&f, ell).unwrap(), "n={n} ell={ell}");
            assert!(!is_k_alternating(&f, ell + 1).unwrap(), "n={n} ell={ell}");
        }
    }
}

#[test]
fn partition_matroid_ranks_are_coverage() {
    let g = ground(5);
    let p = Partition::new(
        g,
        vec![
            SubsetMask(0b00011),
            SubsetMask(0b01100),
            SubsetMask(0b10000),
        ],
    )
    .unwrap();
    let r = make_partition_matroid_rank(&p);
    assert!(is_infinite_alternating(&r).unwrap());
    assert_eq!(r.total(), &int(3));
}
