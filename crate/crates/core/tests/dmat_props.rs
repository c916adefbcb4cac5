mod common;

use common::*;
use proptest::prelude::*;
use trivspec_core::dmat::DMatrix;

fn backends() -> Vec<std::sync::Arc<trivspec_core::Algebra>> {
    vec![fp(3), fq(5, 2), rationals(), hamilton(), gaussian()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn rank_is_invariant_under_equivalence(seed in any::<u64>(), n in 1usize..4, p in 1usize..4) {
        for alg in backends() {
            let mut r = rng(seed);
            let m = DMatrix::random(&alg, n, p, &mut r);
            let a = DMatrix::random_invertible(&alg, n, &mut r);
            let b = DMatrix::random_invertible(&alg, p, &mut r);
            prop_assert_eq!(a.mul(&m).mul(&b).rank_d().unwrap(), m.rank_d().unwrap());
        }
    }

    #[test]
    fn rank_plus_nullity(seed in any::<u64>(), n in 1usize..4, p in 1usize..4) {
        for alg in backends() {
            let mut r = rng(seed);
            // low-rank products exercise nontrivial kernels
            let k = 1 + (seed as usize % n.min(p));
            let m = DMatrix::random(&alg, n, k, &mut r).mul(&DMatrix::random(&alg, k, p, &mut r));
            let null = m.solve_right_null().unwrap();
            prop_assert_eq!(m.rank_d().unwrap() + null.len(), p);
            for x in &null {
                prop_assert!(m.apply(x).iter().all(|c| alg.field.is_zero(c)));
            }
        }
    }

    #[test]
    fn diagonalisable_implies_semisimple(seed in any::<u64>(), n in 1usize..4) {
        for alg in [fp(3), fp(5), fq(3, 2)] {
            let m = DMatrix::random(&alg, n, n, &mut rng(seed));
            if m.is_f_diagonalisable().unwrap() {
                prop_assert!(m.is_semisimple().unwrap());
            }
        }
    }

    #[test]
    fn min_poly_is_a_similarity_invariant(seed in any::<u64>(), n in 1usize..4) {
        for alg in backends() {
            let mut r = rng(seed);
            let m = DMatrix::random(&alg, n, n, &mut r);
            let c = DMatrix::random_invertible(&alg, n, &mut r);
            let conj = c.mul(&m).mul(&c.inverse().unwrap());
            prop_assert_eq!(conj.min_poly_over_f().unwrap(), m.min_poly_over_f().unwrap());
        }
    }
}
