use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kmm_bench::{cover_env, int_matrix};
use kmm_core::la::{catalog_entry, check_axioms, parse, sigma_by_axioms, sigma_direct, EvalConfig, Evaluator};
use std::hint::black_box;

fn parsing(c: &mut Criterion) {
    let sources: Vec<_> = ["Cover", "Path", "SDR"]
        .into_iter()
        .map(|name| (name, catalog_entry(name).expect("catalog entry").source))
        .collect();
    let mut group = c.benchmark_group("parse");
    for (name, text) in &sources {
        group.bench_with_input(BenchmarkId::from_parameter(name), text, |b, t| b.iter(|| parse(black_box(t))));
    }
    group.finish();
}

fn evaluation(c: &mut Criterion) {
    let cover = catalog_entry("Cover").expect("catalog entry").formula;
    let evaluator = Evaluator::new(EvalConfig::default());
    let mut group = c.benchmark_group("eval_cover");
    for n in [4, 8, 16] {
        let env = cover_env(n, n as u64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &env, |b, env| {
            b.iter(|| evaluator.eval(black_box(&cover), env))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("sigma");
    for n in [8, 32] {
        let m = int_matrix(n, n as u64);
        group.bench_with_input(BenchmarkId::new("direct", n), &m, |b, m| b.iter(|| sigma_direct(black_box(m))));
        group.bench_with_input(BenchmarkId::new("by_axioms", n), &m, |b, m| {
            b.iter(|| sigma_by_axioms(black_box(m)))
        });
    }
    group.finish();
}

fn axioms(c: &mut Criterion) {
    let mut group = c.benchmark_group("axioms");
    group.sample_size(10);
    group.bench_function("check_axioms_50", |b| b.iter(|| check_axioms(black_box(50), 1)));
    group.finish();
}

criterion_group!(benches, parsing, evaluation, axioms);
criterion_main!(benches);
