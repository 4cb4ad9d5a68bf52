mod common;

use common::*;
use monodec::charges::{
    canonical_dual, lower_charge, upper_charge, verify_lower_charge_maximality, Charge,
};
use monodec::coverage::extremal;
use monodec::rational::int;
use monodec::{Rational, SubsetMask};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn upper_charge_is_the_least_majorant() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for n in 1..=5 {
        for _ in 0..10 {
            let f = random_coverage(&mut rng, n);
            let up = upper_charge(&f).unwrap();
            let up_f = up.to_set_function();
            assert!(f.ground().subsets().all(|x| f.value(x) <= up_f.value(x)));
            for _ in 0..10 {
                // Any majorizing charge dominates the singleton values.
                let atoms: Vec<Rational> = (0..n)
                    .map(|i| up.atoms()[i].clone() + nonneg_rational(&mut rng, 3))
                    .collect();
                let eta = Charge::new(f.ground(), atoms).unwrap();
                let eta_f = eta.to_set_function();
                if f.ground().subsets().all(|x| f.value(x) <= eta_f.value(x)) {
                    assert!((0..n).all(|i| up.atoms()[i] <= eta.atoms()[i]));
                }
            }
        }
    }
}

#[test]
fn lower_charge_matches_lp_and_is_maximal() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for n in 1..=5 {
        for _ in 0..10 {
            let f = random_coverage(&mut rng, n);
            let check = verify_lower_charge_maximality(&f).unwrap();
            assert!(check.agrees, "{check:?}");
            let low = lower_charge(&f).unwrap();
            let rest = &f - &low.to_set_function();
            assert!(rest.is_increasing());
            // Raising any atom breaks monotonicity.
            let i = rng.random_range(0..n);
            let mut atoms = low.atoms().to_vec();
            atoms[i] += int(1);
            let bigger = Charge::new(f.ground(), atoms).unwrap();
            assert!(!(&f - &bigger.to_set_function()).is_increasing());
        }
    }
}

#[test]
fn extremal_with_large_support_has_zero_lower_charge() {
    let g = ground(4);
    let f = extremal(g, SubsetMask(0b0110)).unwrap();
    assert!(lower_charge(&f).unwrap().atoms().iter().all(Zero::is_zero));
    let dual = canonical_dual(&f).unwrap();
    assert!(dual.is_submodular());
}
