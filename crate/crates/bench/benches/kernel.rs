//! Hot-path benchmarks: graph construction, diameter sweeps, K extraction,
//! Sylow ascent, isomorphism testing and catalog generation.

use criterion::{criterion_group, criterion_main, Criterion};
use epg_core::catalog::{generate_catalog, CatalogOptions};
use epg_core::constructions::{cyclic, dicyclic, matrix_group, MatrixKind};
use epg_core::epgraph::{k_subgroup, EpGraph, KMethod};
use epg_core::group::is_isomorphic;
use epg_core::structure::verify_group;
use std::hint::black_box;

fn bench_graph_build(c: &mut Criterion) {
    let sl25 = matrix_group(MatrixKind::Sl2, 5).unwrap();
    let c256 = cyclic(256).unwrap();
    c.bench_function("build_graph_sl2_5", |b| {
        b.iter(|| EpGraph::build(black_box(&sl25)).unwrap())
    });
    c.bench_function("build_graph_c256", |b| {
        b.iter(|| EpGraph::build(black_box(&c256)).unwrap())
    });
}

fn bench_diameter(c: &mut Criterion) {
    let sl25 = matrix_group(MatrixKind::Sl2, 5).unwrap();
    let graph = EpGraph::build(&sl25).unwrap();
    c.bench_function("diameter_sl2_5", |b| b.iter(|| black_box(&graph).diameter()));
}

fn bench_k_subgroup(c: &mut Criterion) {
    let sl25 = matrix_group(MatrixKind::Sl2, 5).unwrap();
    c.bench_function("k_universal_sl2_5", |b| {
        b.iter(|| k_subgroup(black_box(&sl25), KMethod::Universal))
    });
    c.bench_function("k_intersection_sl2_5", |b| {
        b.iter(|| k_subgroup(black_box(&sl25), KMethod::Intersection))
    });
}

fn bench_sylow(c: &mut Criterion) {
    let gl25 = matrix_group(MatrixKind::Gl2, 5).unwrap();
    c.bench_function("sylow_2_gl2_5", |b| {
        b.iter(|| black_box(&gl25).sylow(2).unwrap())
    });
}

fn bench_isomorphism(c: &mut Criterion) {
    let a = dicyclic(32).unwrap();
    let b2 = dicyclic(32).unwrap();
    c.bench_function("is_isomorphic_q32", |b| {
        b.iter(|| is_isomorphic(black_box(&a), black_box(&b2)).unwrap())
    });
}

fn bench_verify(c: &mut Criterion) {
    let sl23 = matrix_group(MatrixKind::Sl2, 3).unwrap();
    c.bench_function("verify_group_sl2_3", |b| {
        b.iter(|| verify_group(black_box(&sl23)))
    });
}

fn bench_catalog(c: &mut Criterion) {
    c.bench_function("generate_catalog_64", |b| {
        b.iter(|| generate_catalog(black_box(64), &CatalogOptions::default()).unwrap())
    });
}

criterion_group!(
    benches,
    bench_graph_build,
    bench_diameter,
    bench_k_subgroup,
    bench_sylow,
    bench_isomorphism,
    bench_verify,
    bench_catalog
);
criterion_main!(benches);
