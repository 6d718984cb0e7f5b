//! Benchmarks for the hot paths: one synchronous update sweep, whole
//! runs to convergence, range selection, and the baselines.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use sup_bench::{noisy, triplets};
use sup_core::baselines::{dendrogram, kmeans, KMeansConfig, Linkage};
use sup_core::params::{default_bin_count, find_valleys, frequency_polygon, pairwise_distances};
use sup_core::process::{run_sup, update_step};
use sup_core::{InfluenceSpec, SupOptions};

fn bench_update_step(c: &mut Criterion) {
    let points = noisy();
    let spec = InfluenceSpec::sup_static(3.0);
    c.bench_function("update_step/noise_160", |b| {
        b.iter(|| update_step(black_box(&points), &points, 0, &spec))
    });
}

fn bench_run_sup(c: &mut Criterion) {
    let points = triplets();
    let opts = SupOptions::default();
    c.bench_function("run_sup/triplets_static_r3.5", |b| {
        b.iter(|| run_sup(black_box(&points), &InfluenceSpec::sup_static(3.5), &opts).unwrap())
    });
    c.bench_function("run_sup/triplets_dynamic_r3.5", |b| {
        b.iter(|| run_sup(black_box(&points), &InfluenceSpec::sup_dynamic(3.5), &opts).unwrap())
    });
    let noise = noisy();
    c.bench_function("run_sup/noise_160_static_r3", |b| {
        b.iter(|| run_sup(black_box(&noise), &InfluenceSpec::sup_static(3.0), &opts).unwrap())
    });
}

fn bench_range_selection(c: &mut Criterion) {
    let points = noisy();
    c.bench_function("pairwise_distances/noise_160", |b| {
        b.iter(|| pairwise_distances(black_box(&points)).unwrap())
    });
    let distances = pairwise_distances(&points).unwrap();
    let bins = default_bin_count(distances.len());
    c.bench_function("frequency_polygon_and_valleys/noise_160", |b| {
        b.iter(|| {
            let polygon = frequency_polygon(black_box(&distances), bins).unwrap();
            find_valleys(&polygon, 0.05)
        })
    });
}

fn bench_baselines(c: &mut Criterion) {
    let points = noisy();
    c.bench_function("kmeans/noise_160_k3_x10", |b| {
        b.iter(|| kmeans(black_box(&points), &KMeansConfig::random(3, 10, 0)).unwrap())
    });
    let small = triplets();
    c.bench_function("dendrogram/triplets_centroid", |b| {
        b.iter(|| dendrogram(black_box(&small), Linkage::Centroid).unwrap())
    });
}

criterion_group!(
    benches,
    bench_update_step,
    bench_run_sup,
    bench_range_selection,
    bench_baselines
);
criterion_main!(benches);
