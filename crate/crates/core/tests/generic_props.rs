mod common;

use common::*;
use proptest::prelude::*;
use trivspec_core::generic_matrix::{
    alternator_catcher_check, flanders_atkinson_check, generic_of, poly_rank, random_compression_space,
};
use trivspec_core::oracle::{random_dims, random_space_fuzzer};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn generic_rank_matches_transitive_rank(seed in any::<u64>(), dim in 1usize..5) {
        for (alg, n, p) in [(fp(5), 2, 3), (fp(7), 3, 2), (fq(3, 2), 2, 1), (fp(3), 2, 2)] {
            for s in random_space_fuzzer(&alg, n, p, dim, 1, seed) {
                let trk = s.transitive_rank(1 << 20).unwrap().value;
                let pr = poly_rank(&alg.field, &generic_of(&s), &mut rng(seed));
                if alg.field.cardinality().unwrap() > pr.rank as u64 {
                    prop_assert_eq!(pr.rank, trk);
                }
            }
        }
    }
}

#[test]
fn catchers_match_alternators() {
    let mut checked = 0;
    for (alg, n, p) in [(fp(5), 2, 2), (fp(5), 3, 2), (fp(5), 2, 3), (fq(5, 2), 2, 1), (fq(5, 2), 1, 2), (fp(5), 3, 3)] {
        let dims = random_dims(12, 1, 4, n as u64 * 10 + p as u64);
        for (i, &k) in dims.iter().enumerate() {
            let s = random_space_fuzzer(&alg, n, p, k, 1, i as u64).remove(0);
            if !s.is_target_reduced() {
                continue;
            }
            let rep = alternator_catcher_check(&s).unwrap();
            assert_eq!(rep.alt_dim, rep.catch_dim);
            assert!(rep.round_trip);
            checked += 1;
        }
    }
    assert!(checked >= 30, "only {checked} target-reduced instances");
}

#[test]
fn flanders_atkinson_on_compression_spaces() {
    let f = fp(7).field;
    let mut r = rng(3);
    for i in 0..50 {
        let (n, p) = (2 + i % 3, 2 + (i / 3) % 3);
        let rk = 1 + i % n.min(p);
        let mats = random_compression_space(&f, n, p, rk, 1 + i % 4, &mut r);
        flanders_atkinson_check(&f, &mats, rk, &mut r).unwrap();
    }
}
