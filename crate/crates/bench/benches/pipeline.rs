use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use longpath_bench::{grid, random_pruned};
use longpath_core::grid::{assign_weights, check_band, degree_reduce};
use longpath_core::reduction::{longest_via_reduction, verify_identity};
use longpath_core::ulsim::{main_simulate, Backend};
use longpath_core::{extremal_uniqueness, longest_path_dp, Extremum};

fn dynamic_programs(c: &mut Criterion) {
    let g = random_pruned(60, 0.2, 1, false);
    c.bench_function("longest_path_dp/n60", |b| {
        b.iter(|| longest_path_dp(black_box(&g), g.source(), g.sink()))
    });
    c.bench_function("max_uniqueness/n60", |b| {
        b.iter(|| extremal_uniqueness(black_box(&g), Extremum::Max))
    });
}

fn reduction(c: &mut Criterion) {
    let g = random_pruned(9, 0.5, 2, false);
    c.bench_function("longest_via_reduction/n9", |b| {
        b.iter(|| longest_via_reduction(black_box(&g)).unwrap())
    });
    c.bench_function("verify_identity/n9", |b| {
        b.iter(|| verify_identity(black_box(&g), 500).unwrap())
    });
}

fn grids(c: &mut Criterion) {
    let g = grid(6, 6, 3);
    c.bench_function("assign_and_check_band/6x6", |b| {
        b.iter(|| {
            let wg = assign_weights(&g, g.min_scale()).unwrap();
            check_band(&wg, 1 << 20)
        })
    });
    let d = random_pruned(8, 0.5, 4, false);
    c.bench_function("degree_reduce/n8", |b| {
        b.iter(|| degree_reduce(black_box(&d)).unwrap())
    });
}

fn simulator(c: &mut Criterion) {
    let mut group = c.benchmark_group("main_simulate");
    for n in [4, 5, 6, 7] {
        let g = random_pruned(n, 0.5, 10 + n as u64, true);
        for (name, backend) in [
            ("census", Backend::Census),
            ("enumerate", Backend::Enumerate),
        ] {
            group.bench_with_input(BenchmarkId::new(name, n), &g, |b, g| {
                b.iter(|| main_simulate(g, backend).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, dynamic_programs, reduction, grids, simulator);
criterion_main!(benches);
