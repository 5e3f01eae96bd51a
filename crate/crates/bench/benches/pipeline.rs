//! Benchmarks of the hot paths: algebra construction, the adapted
//! decomposition, the brute-force triple sums, the Ricci oracle, and the
//! end-to-end analysis.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use eincert_core::curvature::{ricci_tensor, triple_coefficients, InvariantMetric};
use eincert_core::decomp::{chain_decompose, invariant_forms_dim, Acting, Space};
use eincert_core::einstein::analyze_chain;
use eincert_core::{build_chain_sp, build_so, Tolerances};

fn bench_algebra_construction(c: &mut Criterion) {
    c.bench_function("build so(12)", |b| {
        b.iter(|| black_box(build_so(12).unwrap()))
    });
}

fn bench_decompose(c: &mut Criterion) {
    let tol = Tolerances::default();
    c.bench_function("decompose sp-chain n=2", |b| {
        b.iter(|| black_box(chain_decompose(build_chain_sp(2).unwrap(), &tol).unwrap()))
    });
}

fn bench_triples(c: &mut Criterion) {
    let tol = Tolerances::default();
    let mut group = c.benchmark_group("triple coefficients");
    group.sample_size(20);
    for n in [2usize, 3] {
        let decomp = chain_decompose(build_chain_sp(n).unwrap(), &tol).unwrap();
        // warm the shared bracket table once so the measurement isolates
        // the summation itself
        let _ = triple_coefficients(&decomp);
        group.bench_function(format!("n={n}"), |b| {
            b.iter(|| black_box(triple_coefficients(&decomp)))
        });
    }
    group.finish();
}

fn bench_ricci(c: &mut Criterion) {
    let tol = Tolerances::default();
    let decomp = chain_decompose(build_chain_sp(3).unwrap(), &tol).unwrap();
    let _ = triple_coefficients(&decomp);
    let metric = InvariantMetric::new(1.3, 0.8).unwrap();
    c.bench_function("ricci tensor n=3", |b| {
        b.iter(|| black_box(ricci_tensor(&decomp, metric)))
    });
}

fn bench_forms_dim(c: &mut Criterion) {
    let tol = Tolerances::default();
    let decomp = chain_decompose(build_chain_sp(2).unwrap(), &tol).unwrap();
    let mut group = c.benchmark_group("invariant forms");
    group.sample_size(10);
    group.bench_function("K on m, n=2", |b| {
        b.iter(|| black_box(invariant_forms_dim(&decomp, Acting::K, Space::M, &tol)))
    });
    group.finish();
}

fn bench_full_analysis(c: &mut Criterion) {
    let tol = Tolerances::default();
    let mut group = c.benchmark_group("analyze");
    group.sample_size(10);
    group.bench_function("sp-chain n=2 end to end", |b| {
        b.iter(|| black_box(analyze_chain(build_chain_sp(2).unwrap(), &tol).unwrap()))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_algebra_construction,
    bench_decompose,
    bench_triples,
    bench_ricci,
    bench_forms_dim,
    bench_full_analysis
);
criterion_main!(benches);
