use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lampkit::congruence::{con_count, jir_con};
use lampkit::lamps::LampContext;
use lampkit::properties::min_failing;
use lampkit::verify::{verify_recipe, VerifyOptions};
use lampkit::{build, Recipe};
use std::hint::black_box;

fn recipes() -> Vec<(&'static str, Recipe)> {
    vec![
        ("s3", Recipe::grid(2, 2).fork(0, 0, 3)),
        (
            "grid-4x5-two-forks",
            Recipe::grid(4, 5).fork(1, 1, 1).fork(0, 2, 3),
        ),
        ("grid-3x8", Recipe::grid(3, 8)),
    ]
}

fn construction(c: &mut Criterion) {
    let mut g = c.benchmark_group("build");
    for (name, r) in recipes() {
        g.bench_with_input(BenchmarkId::from_parameter(name), &r, |b, r| {
            b.iter(|| build(black_box(r)))
        });
    }
    g.finish();
}

fn lamps(c: &mut Criterion) {
    let mut g = c.benchmark_group("lamp-context");
    for (name, r) in recipes() {
        let d = build(&r).unwrap();
        g.bench_function(name, |b| b.iter(|| LampContext::new(black_box(&d))));
    }
    g.finish();
}

fn congruences(c: &mut Criterion) {
    let mut g = c.benchmark_group("congruences");
    for (name, r) in recipes() {
        let d = build(&r).unwrap();
        g.bench_function(BenchmarkId::new("jir-con", name), |b| {
            b.iter(|| jir_con(black_box(d.lattice())))
        });
        g.bench_function(BenchmarkId::new("con-count", name), |b| {
            b.iter(|| con_count(black_box(d.lattice())))
        });
    }
    g.finish();
}

fn verify(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify");
    g.sample_size(20);
    for (name, r) in recipes() {
        g.bench_function(name, |b| {
            b.iter(|| verify_recipe(black_box(&r), VerifyOptions::default()))
        });
    }
    g.finish();
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("min-failing");
    g.sample_size(10);
    g.bench_function("posets-up-to-4", |b| b.iter(|| min_failing(black_box(4))));
    g.finish();
}

criterion_group!(benches, construction, lamps, congruences, verify, search);
criterion_main!(benches);
