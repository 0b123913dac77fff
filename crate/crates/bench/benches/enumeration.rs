use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sawlab::enumerate::{
    count_animals, count_bridges, count_domain_walks, count_partitions_distinct, count_saws, count_sf,
    count_squared_walks, zm, FamilyEdges,
};
use sawlab::{BoxSpec, Budget, GridDomain, Point};

fn walks(c: &mut Criterion) {
    let budget = Budget::default();
    let mut g = c.benchmark_group("saw");
    for n in [8, 10, 12] {
        g.bench_with_input(BenchmarkId::new("count_saws", n), &n, |b, &n| {
            b.iter(|| count_saws(black_box(n), &budget).unwrap())
        });
    }
    g.bench_function("count_bridges/12", |b| b.iter(|| count_bridges(black_box(12), &budget).unwrap()));
    g.bench_function("count_squared_walks/8", |b| b.iter(|| count_squared_walks(black_box(8), &budget).unwrap()));
    g.finish();
}

fn polygons(c: &mut Criterion) {
    let budget = Budget::default();
    let mut g = c.benchmark_group("polygons");
    g.sample_size(10);
    g.bench_function("zm/1", |b| b.iter(|| zm(black_box(1), 0.6, &budget).unwrap()));
    let pair = FamilyEdges::new([BoxSpec::at(0, 0, 1), BoxSpec::at(1, 0, 1)]).unwrap();
    g.bench_function("count_sf/m1_pair", |b| b.iter(|| count_sf(black_box(&pair), &budget).unwrap()));
    let rect = GridDomain::rectangle(5, 5, Point::new(0, 0), Point::new(4, 4)).unwrap();
    g.bench_function("domain_walks/5x5", |b| b.iter(|| count_domain_walks(black_box(&rect), &budget).unwrap()));
    g.finish();
}

fn combinatorics(c: &mut Criterion) {
    let budget = Budget::default();
    c.bench_function("count_animals/10", |b| b.iter(|| count_animals(black_box(10), &budget).unwrap()));
    c.bench_function("partitions_distinct/500", |b| b.iter(|| count_partitions_distinct(black_box(500))));
}

criterion_group!(benches, walks, polygons, combinatorics);
criterion_main!(benches);
