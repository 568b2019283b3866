use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pendulum_bench::energy_grid;
use pendulum_core::figures::{build_figure, FigureId, FigureOptions};
use pendulum_core::mathieu::DEFAULT_TOL;
use pendulum_core::{char_values, graded_correction, period_curve, spectrum, Parity, PendulumConfig};

fn mathieu(c: &mut Criterion) {
    let mut g = c.benchmark_group("char_values");
    for q in [1.0, 160.0, 1000.0] {
        g.bench_with_input(BenchmarkId::from_parameter(q), &q, |b, &q| {
            b.iter(|| char_values(black_box(q), Parity::Even, 50, DEFAULT_TOL).unwrap())
        });
    }
    g.finish();
    let cfg = PendulumConfig::nominal();
    c.bench_function("spectrum/100", |b| b.iter(|| spectrum(black_box(&cfg), 100).unwrap()));
}

fn perturbation(c: &mut Criterion) {
    let cfg = PendulumConfig::nominal();
    let mut g = c.benchmark_group("graded_correction");
    for order in 1..=4 {
        g.bench_with_input(BenchmarkId::from_parameter(order), &order, |b, &order| {
            b.iter(|| graded_correction(order, black_box(5), &cfg).unwrap())
        });
    }
    g.finish();
}

fn classical(c: &mut Criterion) {
    let cfg = PendulumConfig::nominal();
    let energies = energy_grid(1000);
    c.bench_function("period_curve/1000", |b| {
        b.iter(|| period_curve(&cfg, black_box(&energies)).unwrap())
    });
}

fn figures(c: &mut Criterion) {
    let cfg = PendulumConfig::nominal();
    let opts = FigureOptions::default();
    let mut g = c.benchmark_group("figure");
    g.sample_size(10);
    for id in [FigureId::Fig1, FigureId::Fig7, FigureId::Fig8] {
        g.bench_with_input(BenchmarkId::from_parameter(id), &id, |b, &id| {
            b.iter(|| build_figure(id, &cfg, &opts).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, mathieu, perturbation, classical, figures);
criterion_main!(benches);
