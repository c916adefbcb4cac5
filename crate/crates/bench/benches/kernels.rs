use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use trivspec_core::alternator::alternator_space;
use trivspec_core::applications::build_affine_minrank;
use trivspec_core::oracle::exhaustive_max_trivspec;
use trivspec_core::trivial_spectrum::{
    classify_optimal, construct_sh, construct_triangular_model, has_trivial_spectrum, unit_free_hyperplane,
    SpectrumOptions,
};
use trivspec_core::{Algebra, Field};

fn base(p: u64) -> Arc<Algebra> {
    Arc::new(Algebra::base(Field::prime(p).unwrap()))
}

fn ext(p: u64, k: usize) -> Arc<Algebra> {
    Arc::new(Algebra::finite_field(p, k).unwrap())
}

fn spectrum(c: &mut Criterion) {
    let f7 = base(7);
    let tri = construct_triangular_model(&f7, &vec![unit_free_hyperplane(&f7); 3]).unwrap();
    let opts = SpectrumOptions::default();
    c.bench_function("spectrum/triangular_f7_n3", |b| b.iter(|| has_trivial_spectrum(black_box(&tri), &opts).unwrap()));

    let f25 = ext(5, 2);
    let sh = construct_sh(&f25, 2, &f25.standard_profile().unwrap()).unwrap();
    c.bench_function("spectrum/sh_f25_n2", |b| b.iter(|| has_trivial_spectrum(black_box(&sh), &opts).unwrap()));
}

fn alternators(c: &mut Criterion) {
    let f25 = ext(5, 2);
    let sh = construct_sh(&f25, 2, &f25.standard_profile().unwrap()).unwrap();
    c.bench_function("alternator/sh_f25_n2", |b| b.iter(|| alternator_space(black_box(&sh))));
    let h = Arc::new(Algebra::hamilton());
    let shh = construct_sh(&h, 2, &h.standard_profile().unwrap()).unwrap();
    c.bench_function("alternator/sh_hamilton_n2", |b| b.iter(|| alternator_space(black_box(&shh))));
}

fn searches(c: &mut Criterion) {
    let f3 = base(3);
    c.bench_function("oracle/maxdim_mat2_f3", |b| b.iter(|| exhaustive_max_trivspec(black_box(&f3), 2, 1 << 24).unwrap()));
}

fn pipelines(c: &mut Criterion) {
    let mut g = c.benchmark_group("pipeline");
    g.sample_size(10);
    let f343 = ext(7, 3);
    let tri = construct_triangular_model(&f343, &vec![unit_free_hyperplane(&f343); 2]).unwrap();
    let opts = SpectrumOptions::default();
    g.bench_function("classify_f343_n2", |b| b.iter(|| classify_optimal(black_box(&tri), None, &opts).unwrap()));
    let f7 = base(7);
    let aff = build_affine_minrank(&f7, 3, 3, 2).unwrap();
    g.bench_function("minrank_f7_332", |b| b.iter(|| aff.verify_min_rank(2, 1 << 24, 0, 0).unwrap()));
    g.finish();
}

criterion_group!(benches, spectrum, alternators, searches, pipelines);
criterion_main!(benches);
