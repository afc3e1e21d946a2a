//! Single-thread pool versus the default pool on the data-parallel kernels.
//! Build with `--no-default-features` to time the sequential fallback.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use osp_kostka::euler::verify_bryl;
use osp_kostka::kostka::{scan_box, KostkaEngine};
use osp_kostka::moment::run_trials;
use osp_kostka::OspRootData;

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let all = rayon::ThreadPoolBuilder::new().build().unwrap();
    vec![("1-thread", one), ("default", all)]
}

fn kostka_scan(c: &mut Criterion) {
    let data = OspRootData::new(5).unwrap();
    let mut group = c.benchmark_group("kostka_scan_n5_box2");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pool.install(|| black_box(scan_box(&KostkaEngine::new(&data), &data, 2).unwrap())))
        });
    }
    group.finish();
}

fn bryl(c: &mut Criterion) {
    let data = OspRootData::new(4).unwrap();
    let mu = "1,0;1".parse().unwrap();
    let mut group = c.benchmark_group("verify_bryl_n4_qmax4");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pool.install(|| black_box(verify_bryl(&data, &mu, 4).unwrap())))
        });
    }
    group.finish();
}

fn moment(c: &mut Criterion) {
    let data = OspRootData::new(6).unwrap();
    let mut group = c.benchmark_group("moment_trials_n6_x50");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| pool.install(|| black_box(run_trials(&data, 50, 7).unwrap())))
        });
    }
    group.finish();
}

criterion_group!(benches, kostka_scan, bryl, moment);
criterion_main!(benches);
