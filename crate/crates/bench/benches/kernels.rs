use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use yitang_core::arith::{class_number_imag, fundamental_unit, genus_scan, VonMangoldtTable};
use yitang_core::{lyapunov_exponent, MapParams};

fn lyapunov(c: &mut Criterion) {
    let logistic = MapParams::logistic(4.0);
    let zhang = MapParams::default();
    c.bench_function("lyapunov/logistic 1e5", |b| {
        b.iter(|| lyapunov_exponent(black_box(&logistic), 0.3, 100_000, 1000).unwrap())
    });
    c.bench_function("lyapunov/zhang1 5e4", |b| {
        b.iter(|| lyapunov_exponent(black_box(&zhang), 0.4, 50_000, 1000).unwrap())
    });
}

fn arithmetic(c: &mut Criterion) {
    c.bench_function("forms/class number d=-99995", |b| {
        b.iter(|| class_number_imag(black_box(-99_995)).unwrap())
    });
    c.bench_function("genus/scan 1e4", |b| {
        b.iter(|| genus_scan(black_box(10_000)).unwrap())
    });
    c.bench_function("unit/d=9949", |b| {
        b.iter(|| fundamental_unit(black_box(9949)).unwrap())
    });
    c.bench_function("psi/sieve 1e6", |b| {
        b.iter(|| VonMangoldtTable::new(black_box(1_000_000)).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = lyapunov, arithmetic
}
criterion_main!(benches);
