use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use qfp_bench::{asymmetric_alice, packed_scheme};
use qfp_core::audit::{run_classical_audit, AuditConfig};
use qfp_core::{canonicalize, evaluate_strict, optimize_c, pack_states};

fn strict(c: &mut Criterion) {
    let mut group = c.benchmark_group("evaluate_strict");
    for s in [4, 16, 32] {
        let scheme = packed_scheme(s);
        group.bench_with_input(BenchmarkId::from_parameter(s), &scheme, |b, sch| {
            b.iter(|| evaluate_strict(black_box(sch)).unwrap())
        });
    }
    group.finish();

    let scheme = packed_scheme(8);
    c.bench_function("canonicalize/8", |b| {
        b.iter(|| canonicalize(black_box(&scheme)).unwrap())
    });
}

fn search(c: &mut Criterion) {
    let alice = asymmetric_alice();
    c.bench_function("optimize_c/grid4096", |b| {
        b.iter(|| optimize_c(black_box(&alice), 4096, 100).unwrap())
    });
    c.bench_function("pack_states/16x1000", |b| {
        b.iter(|| pack_states(16, 3, 1000).unwrap())
    });
}

fn audit(c: &mut Criterion) {
    let cfg = AuditConfig {
        trials: 1000,
        seed: 7,
        sizes: vec![3, 4, 5, 6, 7, 8],
    };
    c.bench_function("classical_audit/1000", |b| {
        b.iter(|| run_classical_audit(black_box(&cfg)))
    });
}

criterion_group!(benches, strict, search, audit);
criterion_main!(benches);
