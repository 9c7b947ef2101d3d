use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pillai_bench::{gcd_inputs, pillai_f, planted_pair, poly, power_pair};
use pillai_core::{
    corollary_solve, solve_double_rep, solve_fixed_f, theorem1_bound, theorem2_bound, theorem3_bound, DoubleRepMode,
    Parallelism,
};
use std::hint::black_box;

fn bounds(c: &mut Criterion) {
    let (g, h) = power_pair();
    let f = pillai_f();
    let (pg, ph) = planted_pair();
    c.bench_function("theorem1_bound", |b| b.iter(|| theorem1_bound(black_box(&g), &h, &f).unwrap()));
    c.bench_function("theorem2_bound", |b| b.iter(|| theorem2_bound(black_box(&g), &h).unwrap()));
    c.bench_function("theorem3_bound", |b| b.iter(|| theorem3_bound(black_box(&pg), &ph).unwrap()));
}

fn solving(c: &mut Criterion) {
    let (g, h) = power_pair();
    let f = pillai_f();
    c.bench_function("solve_fixed_f", |b| b.iter(|| solve_fixed_f(black_box(&g), &h, &f, Parallelism::Sequential).unwrap()));
    let (p, q, fp) = (poly(&[0, 0, 1]), poly(&[0, 1]), poly(&[0, 0, 0, -1, 1]));
    c.bench_function("corollary_solve", |b| b.iter(|| corollary_solve(black_box(&p), &q, &fp, Parallelism::Sequential).unwrap()));

    let mut group = c.benchmark_group("double_rep");
    group.sample_size(10);
    group.bench_function("t2_powers", |b| {
        b.iter(|| solve_double_rep(black_box(&g), &h, DoubleRepMode::T2, Parallelism::Sequential).unwrap())
    });
    group.finish();
}

fn gcd(c: &mut Criterion) {
    let mut group = c.benchmark_group("poly_gcd");
    for k in [4, 16, 48] {
        let (a, b) = gcd_inputs(k);
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |bch, _| bch.iter(|| black_box(&a).gcd(&b)));
    }
    group.finish();
}

criterion_group!(benches, bounds, solving, gcd);
criterion_main!(benches);
