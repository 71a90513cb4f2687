use std::hint::black_box;

use brillsq::squeezing::analytic_moments;
use brillsq::waveguide::{phase_match, pump_wavenumber_for_phonon};
use brillsq::{diagonalize, Geometry, WaveguideParams};
use criterion::{criterion_group, criterion_main, Criterion};

fn closed_forms(c: &mut Criterion) {
    c.bench_function("diagonalize", |b| {
        b.iter(|| diagonalize(black_box(10e9), black_box(10e9), black_box(1e9)).unwrap())
    });
    c.bench_function("analytic_moments", |b| {
        b.iter(|| analytic_moments(black_box(0.3)).unwrap())
    });

    let params = WaveguideParams {
        omega0: 193e12,
        vg: 7e7,
        va: 8433.0,
        length: 1e-2,
        g: 1e6,
        u: 1e6,
        gamma: 10e-3,
    };
    let k = pump_wavenumber_for_phonon(&params, 10e9, Geometry::Backward).unwrap();
    c.bench_function("phase_match", |b| {
        b.iter(|| phase_match(&params, black_box(k), Geometry::Backward).unwrap())
    });
}

criterion_group!(benches, closed_forms);
criterion_main!(benches);
