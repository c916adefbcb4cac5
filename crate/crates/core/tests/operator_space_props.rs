mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use trivspec_core::dmat::DMatrix;
use trivspec_core::operator_space::{alpha, joint, right_mult_vec, socle, DSubspace, OperatorSpace};
use trivspec_core::{Algebra, FMat, FSubspace};

fn random_hyperplane(alg: &Arc<Algebra>, n: usize, seed: u64) -> FSubspace {
    let f = alg.field;
    let mut r = rng(seed);
    let dn = n * alg.d;
    loop {
        let phi: Vec<_> = (0..dn).map(|_| f.random(&mut r)).collect();
        if phi.iter().any(|x| !f.is_zero(x)) {
            let k = FMat::from_rows(dn, vec![phi]).kernel(&f);
            return FSubspace::span(&f, dn, &k);
        }
    }
}

#[test]
fn socle_of_hyperplanes_has_codimension_one() {
    let mut seed = 0;
    for alg in [fq(3, 2), fq(5, 2)] {
        for n in 1..=3 {
            for _ in 0..17 {
                seed += 1;
                let h = random_hyperplane(&alg, n, seed);
                let s = socle(&alg, n, &h);
                assert_eq!(s.dim_d(), n - 1);
                assert!(h.contains_space(&alg.field, &s.fspace));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn socle_is_idempotent(seed in any::<u64>(), n in 1usize..4) {
        let alg = fq(3, 2);
        let h = random_hyperplane(&alg, n, seed);
        let s = socle(&alg, n, &h);
        prop_assert_eq!(socle(&alg, n, &s.fspace), s);
    }

    #[test]
    fn evaluation_is_right_d_linear(seed in any::<u64>(), n in 1usize..3, p in 1usize..3, k in 0usize..5) {
        for alg in [fq(5, 2), hamilton()] {
            let f = alg.field;
            let mut r = rng(seed);
            let mats: Vec<DMatrix> = (0..k).map(|_| DMatrix::random(&alg, n, p, &mut r)).collect();
            let s = OperatorSpace::span(&alg, n, p, &mats);
            let x: Vec<_> = (0..p).flat_map(|_| alg.random_elem(&mut r)).collect();
            let lambda = alg.random_nonzero(&mut r);
            let lhs = s.evaluate(&right_mult_vec(&alg, &x, &lambda));
            let img = s.evaluate(&x);
            let scaled: Vec<_> = img.basis.iter().map(|v| right_mult_vec(&alg, v, &lambda)).collect();
            prop_assert_eq!(lhs, FSubspace::span(&f, n * alg.d, &scaled));
        }
    }

    #[test]
    fn joint_dimension_formula(seed in any::<u64>(), sizes in prop::collection::vec(1usize..3, 1..4)) {
        let alg = fq(3, 2);
        let mut r = rng(seed);
        let blocks: Vec<OperatorSpace> = sizes
            .iter()
            .map(|&m| {
                let k = r.gen_range(0..=2 * m * m);
                let mats: Vec<DMatrix> = (0..k).map(|_| DMatrix::random(&alg, m, m, &mut r)).collect();
                OperatorSpace::span(&alg, m, m, &mats)
            })
            .collect();
        let j = joint(&blocks).unwrap();
        let mut expected: usize = blocks.iter().map(|b| b.dim()).sum();
        for a in 0..sizes.len() {
            for b in a + 1..sizes.len() {
                expected += alg.d * sizes[a] * sizes[b];
            }
        }
        prop_assert_eq!(j.dim(), expected);
    }
}

#[test]
fn alpha_is_additive() {
    for d in 1..=8u64 {
        for m in 0..=20u64 {
            for n in 0..=20u64 {
                assert_eq!(alpha(m + n, d), alpha(m, d) + alpha(n, d) + m * n * d);
            }
        }
    }
}

#[test]
fn flag_recovers_joint_partition() {
    let a = fp(5);
    let f = a.field;
    // x² − 2 is irreducible over F₅, so its companion matrix spans an
    // irreducible trivial-spectrum line
    let comp = DMatrix::from_flat(&a, 2, 2, vec![f.zero(), f.from_i64(2), f.one(), f.zero()]);
    let irr2 = OperatorSpace::span(&a, 2, 2, &[comp]);
    let zero1 = OperatorSpace::zero(&a, 1, 1);
    for parts in [vec![irr2.clone(), zero1.clone()], vec![zero1.clone(), irr2.clone(), zero1.clone()], vec![irr2.clone(), irr2]] {
        let sizes: Vec<usize> = parts.iter().map(|p| p.n).collect();
        let j = joint(&parts).unwrap();
        let fd = j.flag_decomposition(1 << 20).unwrap();
        assert_eq!(fd.sizes, sizes);
        assert!(fd.is_joint);
        let n = j.n;
        assert!(fd.flag.iter().all(|v: &DSubspace| v.n == n));
    }
}
