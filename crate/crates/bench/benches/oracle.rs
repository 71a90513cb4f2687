use std::hint::black_box;

use brillsq::focksim::{
    measure_moments, squeeze_operator, squeezed_vacuum, squeezed_vacuum_factorized,
};
use brillsq::TruncatedFockSpace;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn squeeze_operator_bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("squeeze_operator");
    group.sample_size(10);
    for n in [20, 40] {
        let space = TruncatedFockSpace::new(n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &space, |b, space| {
            b.iter(|| squeeze_operator(space, black_box(0.3)).unwrap())
        });
    }
    group.finish();
}

fn squeezed_vacuum_bench(c: &mut Criterion) {
    let space = TruncatedFockSpace::new(60).unwrap();
    c.bench_function("squeezed_vacuum/expm/60", |b| {
        b.iter(|| squeezed_vacuum(&space, black_box(0.5)).unwrap())
    });
    c.bench_function("squeezed_vacuum/factorized/60", |b| {
        b.iter(|| squeezed_vacuum_factorized(&space, black_box(0.5)).unwrap())
    });
}

fn measure_moments_bench(c: &mut Criterion) {
    let space = TruncatedFockSpace::new(60).unwrap();
    let state = squeezed_vacuum(&space, 0.5).unwrap();
    c.bench_function("measure_moments/60", |b| {
        b.iter(|| measure_moments(black_box(&state)))
    });
}

criterion_group!(
    benches,
    squeeze_operator_bench,
    squeezed_vacuum_bench,
    measure_moments_bench
);
criterion_main!(benches);
