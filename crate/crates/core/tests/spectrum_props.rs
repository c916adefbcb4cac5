mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use trivspec_core::dmat::DMatrix;
use trivspec_core::operator_space::{alpha, joint, OperatorSpace};
use trivspec_core::trivial_spectrum::{
    classify_optimal, construct_sh, construct_triangular_model, has_trivial_spectrum, is_e_nonisotropic,
    random_nonisotropic, solve_equivalence_scalar, twisted_sh, unit_free_hyperplane, verify_equivalence_certificate,
    BlockKind, SpectrumOptions,
};
use trivspec_core::verdict::Verdict;
use trivspec_core::{Algebra, QuadTag};

fn opts() -> SpectrumOptions {
    SpectrumOptions::default()
}

fn triangular(alg: &Arc<Algebra>, n: usize) -> OperatorSpace {
    construct_triangular_model(alg, &vec![unit_free_hyperplane(alg); n]).unwrap()
}

#[test]
fn triangular_models_are_optimal_everywhere() {
    for alg in [fp(3), fp(5), fq(5, 2), fq(3, 2), rationals(), hamilton(), gaussian(), hyper_radicial()] {
        for n in 1..=3 {
            if alg.d == 4 && n == 3 {
                continue;
            }
            let s = triangular(&alg, n);
            assert_eq!(s.dim() as u64, alpha(n as u64, alg.d as u64));
            let v = has_trivial_spectrum(&s, &opts()).unwrap();
            assert!(v.is_positive(), "{} n={n}: {v:?}", alg.name);
        }
    }
}

#[test]
fn twisted_sh_spectrum_matches_nonisotropy() {
    // over finite fields both sides are exhaustive, so they must agree exactly
    for (alg, n) in [(fp(3), 2), (fp(5), 2), (fp(7), 2), (fq(5, 2), 1), (fq(3, 2), 1), (fq(5, 2), 2), (fp(3), 3)] {
        let profile = alg.standard_profile().unwrap();
        let mut r = rng(n as u64);
        for _ in 0..6 {
            let p = DMatrix::random_invertible(&alg, n, &mut r);
            let s = twisted_sh(&p, &profile).unwrap();
            assert_eq!(s.dim() as u64, alpha(n as u64, alg.d as u64));
            let spectrum = has_trivial_spectrum(&s, &opts()).unwrap();
            let noniso = is_e_nonisotropic(&p, &profile, 1 << 22);
            assert!(spectrum.is_certified() || spectrum.is_refuted());
            assert_eq!(spectrum.is_certified(), noniso.is_certified(), "{} n={n}", alg.name);
        }
    }
}

#[test]
fn sh_over_rational_backends_is_certified_by_its_alternator() {
    for alg in [hamilton(), gaussian(), rationals()] {
        let profile = alg.standard_profile().unwrap();
        for n in 1..=2 {
            let s = construct_sh(&alg, n, &profile).unwrap();
            assert_eq!(s.dim() as u64, alpha(n as u64, alg.d as u64));
            let v = has_trivial_spectrum(&s, &opts()).unwrap();
            assert!(matches!(v, Verdict::CertifiedByAlternator { .. }), "{}: {v:?}", alg.name);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn joints_of_optimal_blocks_are_optimal(sizes in prop::collection::vec(1usize..3, 1..4)) {
        let alg = fq(3, 2);
        let blocks: Vec<OperatorSpace> = sizes.iter().map(|&m| triangular(&alg, m)).collect();
        let n: usize = sizes.iter().sum();
        prop_assert_eq!(joint(&blocks).unwrap().dim() as u64, alpha(n as u64, 2));
    }
}

#[test]
fn classification_round_trips_over_f7() {
    let a = fp(7);
    let pr = a.standard_profile().unwrap();
    let mut r = rng(21);
    for _ in 0..50 {
        let p = random_nonisotropic(&a, 2, &pr, &mut r).unwrap();
        let c = DMatrix::random_invertible(&a, 2, &mut r);
        let s = twisted_sh(&p, &pr).unwrap().conjugate(&c).unwrap();
        let rep = classify_optimal(&s, None, &opts()).unwrap();
        assert_eq!(rep.partition, vec![2]);
        let BlockKind::QuadraticType { profile, p: prec, .. } = &rep.blocks[0].kind else { panic!("wrong block kind") };
        assert_eq!(profile.tag, QuadTag::Trivial);
        let q = c.inverse().unwrap().mul(&rep.basis_change);
        let k = solve_equivalence_scalar(&p, prec, &q, &pr).unwrap().expect("proportional forms");
        assert!(verify_equivalence_certificate(&p, prec, &k, &q, &pr).unwrap());
    }
}

#[test]
fn classification_recovers_joint_partitions() {
    let alg = fq(5, 2);
    let one = triangular(&alg, 1);
    let mut r = rng(4);
    for _ in 0..10 {
        let c = DMatrix::random_invertible(&alg, 2, &mut r);
        let s = joint(&[one.clone(), one.clone()]).unwrap().conjugate(&c).unwrap();
        let rep = classify_optimal(&s, None, &opts()).unwrap();
        assert_eq!(rep.partition, vec![1, 1]);
        assert_eq!(rep.block_tags(), vec!["hyperplane", "hyperplane"]);
    }
}

#[test]
fn classification_over_gaussian_rationals() {
    let alg = gaussian();
    let pr = alg.standard_profile().unwrap();
    let mut r = rng(8);
    for _ in 0..5 {
        let c = DMatrix::random_invertible(&alg, 2, &mut r);
        let s = construct_sh(&alg, 2, &pr).unwrap().conjugate(&c).unwrap();
        let rep = classify_optimal(&s, Some(&[]), &opts()).unwrap();
        assert_eq!(rep.partition, vec![2]);
        let BlockKind::QuadraticType { profile, .. } = &rep.blocks[0].kind else { panic!("wrong block kind") };
        assert_eq!(profile.tag, QuadTag::SeparableQuadratic);
    }
}
