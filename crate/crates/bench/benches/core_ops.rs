use criterion::{criterion_group, criterion_main, Criterion};
use reedykit::diagram::SetDiagram;
use reedykit::ez::{is_normal_mono, boundary, EzStructure};
use reedykit::generators;
use reedykit::reedy::{degree_slice, latching, latching_global};
use std::hint::black_box;

fn bench_validate_reedy(c: &mut Criterion) {
    let (_, s) = generators::cyclic_trunc(2);
    c.bench_function("validate_reedy cyclic2", |b| {
        b.iter(|| black_box(&s).validate_reedy(true).passes())
    });
}

fn bench_total_category(c: &mut Criterion) {
    c.bench_function("build cyclic2 from crossed group", |b| {
        b.iter(|| generators::cyclic_trunc(black_box(2)))
    });
}

fn bench_latching(c: &mut Criterion) {
    let (_, s) = generators::simplex_trunc(3);
    let sop = s.opposite();
    let x = SetDiagram::corepresentable(&sop.category, 3);
    c.bench_function("latching simplex3 at top", |b| {
        b.iter(|| latching(black_box(&sop), black_box(&x), 3).object.size)
    });
    let slice = degree_slice(&sop, 2).unwrap();
    c.bench_function("global latching simplex3 degree 2", |b| {
        b.iter(|| latching_global(black_box(&sop), &slice, &x).unwrap().all_routes_agree)
    });
}

fn bench_normal_mono(c: &mut Criterion) {
    let (cat, s) = generators::cyclic_trunc(2);
    let ez = EzStructure::new(cat, s.degree.clone()).unwrap();
    let (_, incl) = boundary(&ez, 1);
    c.bench_function("three-way normality of the cyclic boundary", |b| {
        b.iter(|| is_normal_mono(black_box(&ez), black_box(&incl)).is_normal())
    });
}

criterion_group!(
    benches,
    bench_validate_reedy,
    bench_total_category,
    bench_latching,
    bench_normal_mono
);
criterion_main!(benches);
