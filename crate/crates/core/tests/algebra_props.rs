mod common;

use common::*;
use proptest::prelude::*;
use trivspec_core::{Algebra, QuadTag};

fn quadratic_type_algebras() -> Vec<std::sync::Arc<Algebra>> {
    vec![fp(5), fq(2, 2), fq(3, 2), fq(5, 2), hamilton(), gaussian(), hyper_radicial()]
}

#[test]
fn trace_is_symmetric_on_small_algebras() {
    for alg in small_finite() {
        let card = alg.cardinality().unwrap();
        for i in 0..card {
            for j in 0..card {
                let (a, b) = (alg.element(i), alg.element(j));
                assert_eq!(alg.trace_td(&alg.mul(&a, &b)), alg.trace_td(&alg.mul(&b, &a)));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]
    #[test]
    fn trace_is_symmetric_over_quaternions(seed in any::<u64>()) {
        let h = hamilton();
        let mut r = rng(seed);
        let (a, b) = (h.random_elem(&mut r), h.random_elem(&mut r));
        prop_assert_eq!(h.trace_td(&h.mul(&a, &b)), h.trace_td(&h.mul(&b, &a)));
    }
}

#[test]
fn sigma_is_an_involutive_antiautomorphism() {
    for alg in quadratic_type_algebras() {
        let f = alg.field;
        let p = alg.standard_profile().unwrap();
        for i in 0..alg.d {
            let x = alg.basis_elem(i);
            assert_eq!(p.apply_sigma(&f, &p.apply_sigma(&f, &x)), x);
            for j in 0..alg.d {
                let y = alg.basis_elem(j);
                let lhs = p.apply_sigma(&f, &alg.mul(&x, &y));
                let rhs = alg.mul(&p.apply_sigma(&f, &y), &p.apply_sigma(&f, &x));
                assert_eq!(lhs, rhs, "{}", alg.name);
            }
        }
    }
}

#[test]
fn norm_times_unit_is_x_sigma_x() {
    for alg in [fq(2, 2), fq(3, 2), fq(5, 2)] {
        let f = alg.field;
        let p = alg.standard_profile().unwrap();
        for i in 0..alg.cardinality().unwrap() {
            let x = alg.element(i);
            assert_eq!(alg.scalar(&p.q.eval(&f, &x)), alg.mul(&x, &p.apply_sigma(&f, &x)));
        }
    }
}

#[test]
fn composition_classifier_reproduces_profiles() {
    for alg in quadratic_type_algebras() {
        let p = alg.standard_profile().unwrap();
        let got = alg.classify_composition_form(&p.q, 1 << 20).unwrap();
        assert_eq!(got.tag, p.tag, "{}", alg.name);
        assert_eq!(got.sigma, p.sigma, "{}", alg.name);
    }
}

#[test]
fn unit_traces() {
    for alg in quadratic_type_algebras().into_iter().chain([fq(7, 3), rationals()]) {
        let f = alg.field;
        assert_eq!(alg.trace_td(&alg.one()), f.from_u64(alg.d as u64));
    }
    // the reduced trace x + σ(x) of 1 is 2 for quadratic and quaternion types
    for alg in [fq(5, 2), hamilton(), gaussian()] {
        let f = alg.field;
        let p = alg.standard_profile().unwrap();
        assert!(matches!(p.tag, QuadTag::SeparableQuadratic | QuadTag::Quaternion));
        let one = alg.one();
        assert_eq!(alg.add(&one, &p.apply_sigma(&f, &one)), alg.scalar(&f.from_i64(2)));
    }
}
