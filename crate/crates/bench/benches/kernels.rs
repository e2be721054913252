use std::f64::consts::PI;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use ringdec_bench::fig3_ring;
use ringdec_core::decoherence::{
    build_ensemble, decoherence_bessel, decoherence_exact, uniform_times,
};
use ringdec_core::specfun::{bessel_j, erfi, kummer_1f1, SeriesControl};
use ringdec_core::spectrum::{
    assemble_thin_spectrum, assemble_thin_spectrum_uncached, fd_bloch_oracle, linearize,
    solve_mode_levels, ModeEigenProblem,
};
use ringdec_core::SolverConfig;

fn special_functions(c: &mut Criterion) {
    let ctrl = SeriesControl::default();
    c.bench_function("kummer_1f1 z=20", |b| {
        b.iter(|| kummer_1f1(black_box(-2.3), 0.5, black_box(20.0), &ctrl))
    });
    c.bench_function("bessel_j order 10 z=30", |b| {
        b.iter(|| bessel_j(black_box(10), black_box(30.0)))
    });
    c.bench_function("erfi x=2.5", |b| b.iter(|| erfi(black_box(2.5))));
}

fn mode_levels(c: &mut Criterion) {
    let cfg = SolverConfig::default();
    let mut group = c.benchmark_group("mode_levels");
    for lambda in [3.0, 8.0, 14.0] {
        let prob = ModeEigenProblem::new(lambda, PI / 3.0, 1.0);
        group.bench_with_input(BenchmarkId::new("root_solver", lambda), &prob, |b, p| {
            b.iter(|| solve_mode_levels(p, 3, &cfg))
        });
    }
    group.sample_size(10);
    let prob = ModeEigenProblem::new(5.0, PI / 3.0, 1.0);
    group.bench_function("fd_oracle grid 4096", |b| {
        b.iter(|| fd_bloch_oracle(&prob, 3, 4096))
    });
    group.finish();
}

fn thin_spectrum(c: &mut Criterion) {
    let p = fig3_ring();
    let cfg = SolverConfig::default();
    let mut group = c.benchmark_group("thin_spectrum");
    group.sample_size(10);
    group.bench_function("assemble cached", |b| {
        b.iter(|| assemble_thin_spectrum(&p, 80, 1, &cfg))
    });
    group.bench_function("assemble uncached", |b| {
        b.iter(|| assemble_thin_spectrum_uncached(&p, 80, 1, &cfg))
    });
    group.finish();
}

fn decoherence(c: &mut Criterion) {
    let p = fig3_ring();
    let cfg = SolverConfig::default();
    let spec = assemble_thin_spectrum(&p, 1, 1, &cfg).unwrap();
    let coeffs = linearize(&spec).unwrap();
    let ens = build_ensemble(&spec, &cfg).unwrap();
    let times = uniform_times(1e-2, 2000).unwrap();
    c.bench_function("exact trace 2000 points", |b| {
        b.iter(|| decoherence_exact(&ens, &spec, &times))
    });
    c.bench_function("bessel trace 2000 points", |b| {
        b.iter(|| decoherence_bessel(&coeffs, &p, &times, None, cfg.gamma_threshold))
    });
}

criterion_group!(
    benches,
    special_functions,
    mode_levels,
    thin_spectrum,
    decoherence
);
criterion_main!(benches);
