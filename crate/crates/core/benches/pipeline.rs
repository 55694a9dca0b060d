use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use toric_degen::ideal::{OrderChoice, Strategy};
use toric_degen::pipeline::{degenerate_batch, degenerate_batch_sequential, degenerate_with};
use toric_degen::polytope::{point, LatticePolytope};
use toric_degen::samples::{blow_up, random_instances};

fn batch(c: &mut Criterion) {
    let instances = random_instances(7, 16);
    let mut group = c.benchmark_group("degenerate_batch");
    group.sample_size(10);
    group.bench_function("parallel", |b| b.iter(|| degenerate_batch(black_box(&instances), OrderChoice::Grevlex)));
    group.bench_function("sequential", |b| b.iter(|| degenerate_batch_sequential(black_box(&instances), OrderChoice::Grevlex)));
    group.finish();
}

fn lattice_points(c: &mut Criterion) {
    let mut group = c.benchmark_group("lattice_points");
    for size in [8i64, 16] {
        let cube = LatticePolytope::from_vertices(
            3,
            [[0, 0, 0], [size, 0, 0], [0, size, 0], [0, 0, size], [size, size, 0], [size, 0, size], [0, size, size], [size, size, size]]
                .iter()
                .map(|v| point(v))
                .collect(),
        )
        .unwrap();
        group.bench_with_input(BenchmarkId::new("parallel", size), &cube, |b, p| b.iter(|| p.lattice_points()));
        group.bench_with_input(BenchmarkId::new("sequential", size), &cube, |b, p| b.iter(|| p.lattice_points_sequential()));
    }
    group.finish();
}

fn groebner(c: &mut Criterion) {
    let inst = blow_up();
    let mut group = c.benchmark_group("groebner_strategy");
    group.sample_size(20);
    for (name, strategy) in [("batched", Strategy::Batched), ("sequential", Strategy::Sequential)] {
        group.bench_function(name, |b| {
            b.iter(|| degenerate_with(&inst.parent, &inst.pieces[0], &inst.pieces[1], None, OrderChoice::Grevlex, strategy).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, batch, lattice_points, groebner);
criterion_main!(benches);
