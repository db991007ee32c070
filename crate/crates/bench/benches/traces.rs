//! Benchmarks for trace analysis and the constructions.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use strongtrace::synthesis::{
    antiparallel_decision, antiparallel_strong_trace, enumerate_all, parallel_strong_trace, strong_trace,
};
use strongtrace::{fixtures, Budget, Convention, EnumerationOptions};

fn bench_analysis(c: &mut Criterion) {
    let g = fixtures::petersen();
    let walk = strong_trace(&g).unwrap().trace().unwrap().vertices();
    c.bench_function("validate_and_classify_petersen", |b| {
        b.iter(|| strongtrace::validate_double_trace(&g, black_box(&walk)).unwrap().classify_edges())
    });
}

fn bench_strong(c: &mut Criterion) {
    let mut group = c.benchmark_group("strong_trace");
    for (name, g) in [("k5", fixtures::complete(5)), ("petersen", fixtures::petersen()), ("k8", fixtures::complete(8))] {
        group.bench_with_input(BenchmarkId::from_parameter(name), &g, |b, g| b.iter(|| strong_trace(g).unwrap()));
    }
    group.finish();
}

fn bench_parallel(c: &mut Criterion) {
    let mut group = c.benchmark_group("parallel_strong_trace");
    for n in [5, 7, 9] {
        let g = fixtures::complete(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| b.iter(|| parallel_strong_trace(g).unwrap()));
    }
    group.finish();
}

fn bench_antiparallel(c: &mut Criterion) {
    let budget = Budget::default();
    let k5 = fixtures::complete(5);
    c.bench_function("antiparallel_decision_k5", |b| b.iter(|| antiparallel_decision(&k5, &budget).unwrap()));
    c.bench_function("antiparallel_strong_trace_k5", |b| b.iter(|| antiparallel_strong_trace(&k5, &budget).unwrap()));
}

fn bench_enumerate(c: &mut Criterion) {
    let cube = fixtures::cube();
    let options = EnumerationOptions { representatives: false, ..EnumerationOptions::default() };
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    group.bench_function("cube_all_conventions", |b| b.iter(|| enumerate_all(&cube, &Convention::ALL, &options).unwrap()));
    group.finish();
}

criterion_group!(benches, bench_analysis, bench_strong, bench_parallel, bench_antiparallel, bench_enumerate);
criterion_main!(benches);
