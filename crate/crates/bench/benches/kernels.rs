use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use coherence_bench::{driven_pair, partially_coherent_pulse, partially_coherent_pump, unit_crystal};
use coherence_core::atoms::{excitation_scan, steady_state};
use coherence_core::green::chi_tensor;
use coherence_core::pulse::propagate_intensity;
use coherence_core::shg::shg_intensity;
use coherence_core::{MismatchVector, Position3};

fn green(c: &mut Criterion) {
    let a = Position3::new(0.0, 0.0, 0.0);
    let b = Position3::new(0.3, -0.2, 0.7);
    c.bench_function("chi_tensor", |bench| {
        bench.iter(|| chi_tensor(black_box(a), black_box(b), black_box(5.0)))
    });
}

fn master(c: &mut Criterion) {
    let d = driven_pair(201);
    c.bench_function("steady_state", |bench| {
        bench.iter(|| steady_state(black_box(&d), black_box(1000.0), true))
    });
    c.bench_function("excitation_scan_201", |bench| bench.iter(|| excitation_scan(&d, true)));
}

fn shg(c: &mut Criterion) {
    let vol = unit_crystal();
    let pump = partially_coherent_pump();
    let q = MismatchVector([3.0, 0.0, 0.0]);
    c.bench_function("shg_intensity_gaussian_schell", |bench| {
        bench.iter(|| shg_intensity(black_box(&vol), black_box(&pump), black_box(q)))
    });
}

fn pulse(c: &mut Criterion) {
    let mut group = c.benchmark_group("propagate_intensity");
    group.sample_size(10);
    for n in [128, 256, 512] {
        let (corr, cfg) = partially_coherent_pulse(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |bench, _| {
            bench.iter(|| propagate_intensity(&corr, &cfg))
        });
    }
    group.finish();
}

criterion_group!(benches, green, master, shg, pulse);
criterion_main!(benches);
