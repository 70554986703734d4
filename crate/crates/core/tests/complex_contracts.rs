//! Contracts of the knot Floer engine on random inputs.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use veerkit::cfk::random::{random_cfk, random_fibered_cfk};
use veerkit::cfk::{
    b_invariant, b_invariant_via_top_differential, mirror, signature, tau, tensor, validate_cfk,
};
use veerkit::surgery::check_yi;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mirror_flips_dimensions_and_is_an_involution(seed in any::<u64>()) {
        let c = random_cfk(&mut rng(seed));
        let m = mirror(&c).unwrap();
        prop_assert!(validate_cfk(&m).is_valid());
        let dims = c.dims_by_alexander();
        let mdims = m.dims_by_alexander();
        for (a, d) in &dims {
            prop_assert_eq!(mdims.get(&-a), Some(d));
        }
        prop_assert_eq!(dims.len(), mdims.len());
        prop_assert_eq!(signature(&mirror(&m).unwrap()), signature(&c));
    }

    #[test]
    fn tensor_is_commutative_and_associative(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let (a, b, c) = (random_cfk(&mut rng(s1)), random_cfk(&mut rng(s2)), random_cfk(&mut rng(s3)));
        prop_assume!(a.len() * b.len() * c.len() <= 2000);
        let ab = tensor(&a, &b).unwrap();
        prop_assert_eq!(signature(&ab), signature(&tensor(&b, &a).unwrap()));
        prop_assert_eq!(
            signature(&tensor(&ab, &c).unwrap()),
            signature(&tensor(&a, &tensor(&b, &c).unwrap()).unwrap())
        );
    }

    #[test]
    fn b_routes_agree_and_tau_is_odd(seed in any::<u64>(), fig8 in any::<bool>()) {
        let c = random_fibered_cfk(&mut rng(seed), fig8);
        prop_assert!(validate_cfk(&c).is_valid());
        let b = b_invariant(&c).unwrap();
        prop_assert_eq!(b.is_one(), b_invariant_via_top_differential(&c).unwrap());
        let m = mirror(&c).unwrap();
        prop_assert_eq!(b_invariant(&m).unwrap().is_one(), b_invariant_via_top_differential(&m).unwrap());
        prop_assert_eq!(tau(&m).unwrap(), -tau(&c).unwrap());
        if fig8 {
            prop_assert!(b.is_one());
            prop_assert!(b_invariant(&m).unwrap().is_one());
        }
    }

    #[test]
    fn zero_surgery_formula_on_random_sums(seed in any::<u64>()) {
        let k = random_fibered_cfk(&mut rng(seed), true);
        let check = check_yi(&k, &[1, 2, 3]).unwrap();
        prop_assert!(check.holds, "{:?}", check);
    }
}
