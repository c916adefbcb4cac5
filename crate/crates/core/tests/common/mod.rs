#![allow(dead_code)]

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trivspec_core::{Algebra, Field};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fp(p: u64) -> Arc<Algebra> {
    Arc::new(Algebra::base(Field::prime(p).unwrap()))
}

pub fn fq(p: u64, k: usize) -> Arc<Algebra> {
    Arc::new(Algebra::finite_field(p, k).unwrap())
}

pub fn rationals() -> Arc<Algebra> {
    Arc::new(Algebra::base(Field::Rationals))
}

pub fn hamilton() -> Arc<Algebra> {
    Arc::new(Algebra::hamilton())
}

pub fn gaussian() -> Arc<Algebra> {
    Arc::new(Algebra::gaussian_rationals())
}

pub fn hyper_radicial() -> Arc<Algebra> {
    Arc::new(Algebra::hyper_radicial_f2s())
}

/// Small finite algebras where exhaustive loops are cheap.
pub fn small_finite() -> Vec<Arc<Algebra>> {
    vec![fp(3), fp(5), fq(2, 2), fq(3, 2), fq(5, 2)]
}
