use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use indpoly::harness::exhaustive_source;
use indpoly::{
    alternating_number, build_atom_table, check_corpus, decycling_number, ind_poly, CheckOptions,
    InvariantReport,
};
use indpoly_bench::fixtures;

fn polynomial(c: &mut Criterion) {
    let mut group = c.benchmark_group("ind_poly");
    for (name, g) in fixtures() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| ind_poly(black_box(g)))
        });
    }
    group.finish();
}

fn alternating(c: &mut Criterion) {
    let mut group = c.benchmark_group("alternating_number");
    for (name, g) in fixtures() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| alternating_number(black_box(g)))
        });
    }
    group.finish();
}

fn decycling(c: &mut Criterion) {
    let mut group = c.benchmark_group("decycling_number");
    group.sample_size(10);
    for (name, g) in fixtures() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| {
            b.iter(|| decycling_number(black_box(g)))
        });
    }
    group.finish();
}

fn harness(c: &mut Criterion) {
    let mut group = c.benchmark_group("harness");
    group.sample_size(10);
    group.bench_function("exhaustive_n6", |b| {
        b.iter(|| {
            let mut rows: Vec<InvariantReport> = Vec::new();
            check_corpus(
                exhaustive_source(6).unwrap(),
                &CheckOptions::default(),
                &mut rows,
            )
            .unwrap()
        })
    });
    group.bench_function("atom_table_7", |b| b.iter(|| build_atom_table(7).unwrap()));
    group.finish();
}

criterion_group!(benches, polynomial, alternating, decycling, harness);
criterion_main!(benches);
