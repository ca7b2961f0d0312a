use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kmm_bench::{seeded_matrix, ORACLE_SIDES, SOLVER_SIDES};
use kmm_core::{diagonalize, max_selection, min_cover, oracle_min_cover, OracleBudget};
use std::hint::black_box;

fn solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("solver");
    for n in SOLVER_SIDES {
        let a = seeded_matrix(n, 0.5, n as u64);
        group.bench_with_input(BenchmarkId::new("min_cover", n), &a, |b, a| b.iter(|| min_cover(black_box(a))));
        group.bench_with_input(BenchmarkId::new("max_selection", n), &a, |b, a| {
            b.iter(|| max_selection(black_box(a)))
        });
        group.bench_with_input(BenchmarkId::new("diagonalize", n), &a, |b, a| b.iter(|| diagonalize(black_box(a))));
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(10);
    let budget = OracleBudget::default();
    for n in ORACLE_SIDES {
        let a = seeded_matrix(n, 0.5, n as u64);
        group.bench_with_input(BenchmarkId::new("min_cover", n), &a, |b, a| {
            b.iter(|| oracle_min_cover(black_box(a), &budget))
        });
    }
    group.finish();
}

criterion_group!(benches, solver, oracle);
criterion_main!(benches);
