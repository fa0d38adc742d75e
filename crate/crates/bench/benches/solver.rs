use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use trajeval_bench::random_cost_matrix;
use trajeval_core::solve;

fn bench_square(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_square");
    for k in [8usize, 32, 128] {
        let matrix = random_cost_matrix(k, k, 0x50_1A + k as u64);
        group.bench_with_input(BenchmarkId::from_parameter(k), &matrix, |b, m| {
            b.iter(|| solve(black_box(m)));
        });
    }
    group.finish();
}

fn bench_rectangular(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_rectangular");
    for (rows, cols) in [(16usize, 64usize), (64, 16), (64, 256)] {
        let matrix = random_cost_matrix(rows, cols, 0x9E37);
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{rows}x{cols}")),
            &matrix,
            |b, m| {
                b.iter(|| solve(black_box(m)));
            },
        );
    }
    group.finish();
}

criterion_group!(benches, bench_square, bench_rectangular);
criterion_main!(benches);
