mod common;

use common::*;
use proptest::prelude::*;
use trivspec_core::alternator::{
    alternator_space, gram_from_sesquilinear, is_alternator_pointwise, radicals, recover_sesquilinear,
};
use trivspec_core::dmat::DMatrix;
use trivspec_core::oracle::random_space_fuzzer;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn alternators_vanish_pointwise(seed in any::<u64>(), dim in 1usize..5) {
        for (alg, n) in [(fp(3), 2), (fp(2), 3), (fq(3, 2), 2), (fq(2, 2), 2)] {
            for s in random_space_fuzzer(&alg, n, n, dim, 1, seed) {
                for g in alternator_space(&s) {
                    prop_assert!(is_alternator_pointwise(&s, &g).unwrap());
                }
            }
        }
    }

    #[test]
    fn radicals_are_respected(seed in any::<u64>(), dim in 1usize..4) {
        let alg = fp(5);
        let f = alg.field;
        for s in random_space_fuzzer(&alg, 3, 2, dim, 1, seed) {
            for g in alternator_space(&s) {
                let (lrad, rrad) = radicals(&f, &g);
                for u in s.frep_basis() {
                    for x in &lrad.basis {
                        prop_assert!(rrad.contains(&f, &u.mul_vec(&f, x)));
                    }
                }
            }
        }
    }
}

#[test]
fn quasitransitive_spaces_have_at_most_one_alternator() {
    let alg = fp(5);
    let mut hits = 0;
    let spaces = random_space_fuzzer(&alg, 3, 3, 2, 100, 5).into_iter().chain(random_space_fuzzer(&alg, 3, 2, 2, 100, 6));
    for s in spaces {
        if !s.is_target_reduced() || s.transitive_rank(1 << 20).unwrap().value + 1 != s.n * s.d() {
            continue;
        }
        hits += 1;
        assert!(alternator_space(&s).len() <= 1);
    }
    assert!(hits > 0);
}

#[test]
fn sesquilinear_recovery_is_a_left_inverse() {
    for alg in [fq(5, 2), fq(3, 2), hamilton(), gaussian(), hyper_radicial(), fp(7)] {
        let profile = alg.standard_profile().unwrap();
        let mut r = rng(11);
        for i in 0..100 {
            let n = 1 + i % 3;
            let p = DMatrix::random(&alg, n, n, &mut r);
            let g = gram_from_sesquilinear(&p, &profile);
            assert_eq!(recover_sesquilinear(&alg, &g, &profile).unwrap(), p, "{}", alg.name);
        }
    }
}
