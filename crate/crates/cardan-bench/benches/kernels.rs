use criterion::{black_box, criterion_group, criterion_main, Criterion};

use cardan::{motion, perimeter, MotionConfig, PerimeterLaw, QuadratureSpec};

fn elliptic_integrals(c: &mut Criterion) {
    c.bench_function("complete_k mid-range", |b| {
        b.iter(|| cardan::elliptic::complete_k(black_box(0.5)).unwrap())
    });
    c.bench_function("complete_e near one", |b| {
        b.iter(|| cardan::elliptic::complete_e(black_box(0.999999)).unwrap())
    });
}

fn perimeter_kernels(c: &mut Criterion) {
    let law = PerimeterLaw::new(MotionConfig::new(1.0, 2.0).unwrap());
    let spec = QuadratureSpec::default();
    c.bench_function("h(w)", |b| b.iter(|| motion::h(black_box(0.73))));
    c.bench_function("invert_h", |b| {
        b.iter(|| perimeter::invert_h(black_box(9.5), 2.0).unwrap())
    });
    c.bench_function("moment_quadrature k=2", |b| {
        b.iter(|| law.moment_quadrature(2, &spec).unwrap())
    });
    c.bench_function("expectation closed form", |b| b.iter(|| law.expectation()));
}

fn sampling(c: &mut Criterion) {
    let cfg = MotionConfig::new(1.0, 1.5).unwrap();
    c.bench_function("sample 10k points", |b| {
        b.iter(|| cardan::monte_carlo::sample(&cfg, 10_000, black_box(42)).unwrap())
    });
}

criterion_group!(benches, elliptic_integrals, perimeter_kernels, sampling);
criterion_main!(benches);
