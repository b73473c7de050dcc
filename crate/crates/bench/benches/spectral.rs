use criterion::{black_box, criterion_group, criterion_main, Criterion};
use g2calc::massey_dga::examples::builtin_model;
use g2calc::massey_dga::massey_triple;
use g2calc::torus_spectral::{build_mode_table, mode_cohomology, verify_relations};
use g2calc_bench::{AXIS_MODE, GENERIC_MODE};

fn spectral(c: &mut Criterion) {
    let mut g = c.benchmark_group("per-mode");
    g.sample_size(10);
    g.bench_function("build_mode_table", |b| b.iter(|| build_mode_table(black_box(GENERIC_MODE))));
    g.bench_function("mode_cohomology/generic", |b| b.iter(|| mode_cohomology(black_box(GENERIC_MODE))));
    g.bench_function("mode_cohomology/axis", |b| b.iter(|| mode_cohomology(black_box(AXIS_MODE))));
    g.bench_function("verify_relations", |b| b.iter(|| verify_relations(black_box(GENERIC_MODE))));
    g.finish();
}

fn massey(c: &mut Criterion) {
    let m = builtin_model("iwasawa-product").expect("built-in model");
    let (e1, e2) = (m.generator("e1").unwrap(), m.generator("e2").unwrap());
    c.bench_function("massey/iwasawa-product", |b| b.iter(|| massey_triple(&m, &e1, &e2, &e2).unwrap()));
}

criterion_group!(benches, spectral, massey);
criterion_main!(benches);
