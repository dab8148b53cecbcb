//! Parallel against sequential sweep execution on a fixed 2,000-run design.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use threatdyn::{execute_sweep, sample_design, SimConfig};

fn sweep(c: &mut Criterion) {
    let mut config = SimConfig::default();
    config.design.n_runs = 2_000;
    let design = sample_design(&config.design).unwrap();
    let workers = std::thread::available_parallelism()
        .map_or(4, |n| n.get())
        .max(2);

    let mut group = c.benchmark_group("sweep_2000_runs");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| execute_sweep(black_box(&design), &config, 1).unwrap())
    });
    group.bench_function(format!("parallel_{workers}_workers"), |b| {
        b.iter(|| execute_sweep(black_box(&design), &config, workers).unwrap())
    });
    group.finish();
}

criterion_group!(benches, sweep);
criterion_main!(benches);
