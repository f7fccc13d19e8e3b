use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use pwhit_bench::fixtures;
use pwhit_core::gz::sampling::{random_array, random_test_function, stream};
use pwhit_core::gz::{build_en_n, combin2};
use pwhit_core::{evaluate, eval_residue_series, integrand, leading_asymptotic, log_gamma, SeriesConfig};

fn bench_special(c: &mut Criterion) {
    let z = Complex64::new(0.3, 12.5);
    c.bench_function("log_gamma", |b| b.iter(|| log_gamma(black_box(z))));
    let (_, s) = &fixtures()[2];
    let g = [Complex64::new(1.2, 0.7), Complex64::new(1.2, -2.1)];
    c.bench_function("integrand_gr2_4", |b| b.iter(|| integrand(black_box(&g), s)));
}

fn bench_evaluators(c: &mut Criterion) {
    let mut group = c.benchmark_group("mb");
    group.sample_size(10);
    for (name, s) in fixtures() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, s| b.iter(|| evaluate(s, 1e-8)));
    }
    group.finish();

    let mut group = c.benchmark_group("residue");
    for (name, s) in fixtures() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, s| {
            b.iter(|| eval_residue_series(s, &SeriesConfig::default()))
        });
    }
    group.finish();

    let mut group = c.benchmark_group("leading_asymptotic");
    for (name, s) in fixtures() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, s| b.iter(|| leading_asymptotic(s)));
    }
    group.finish();
}

fn bench_gz(c: &mut Criterion) {
    let g: Vec<Complex64> = (0..8).map(|k| Complex64::from_polar(1.0, 0.8 * k as f64)).collect();
    c.bench_function("combin2_n8", |b| b.iter(|| combin2(black_box(&g), Complex64::new(0.1, 0.2))));

    let op = build_en_n(1, 5, 1.0).unwrap();
    let f = random_test_function(&mut stream(1, 0), 5);
    let a = random_array(&mut stream(1, 1), 5, 1.0).unwrap();
    c.bench_function("apply_E15", |b| b.iter(|| op.apply(f.as_ref(), black_box(&a))));
}

criterion_group!(benches, bench_special, bench_evaluators, bench_gz);
criterion_main!(benches);
