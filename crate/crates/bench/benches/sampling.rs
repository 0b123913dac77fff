use std::f64::consts::PI;
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sawlab::analysis::holes;
use sawlab::sampler::{Chain, ExactSampler};
use sawlab::{Budget, GridDomain, Point, SamplerConfig};

fn chain_sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("chain");
    for r in [10u32, 20, 40] {
        let domain = GridDomain::disk(r, PI, 0.0).unwrap();
        let config = SamplerConfig::default().with_x(0.6).with_seed(1);
        let mut chain = Chain::new(&domain, &config, 0).unwrap();
        chain.sweeps(100).unwrap();
        g.bench_with_input(BenchmarkId::new("sweep_x0.6", r), &r, |b, _| b.iter(|| chain.sweep().unwrap()));
    }
    g.finish();
}

fn exact(c: &mut Criterion) {
    let domain = GridDomain::rectangle(4, 4, Point::new(0, 0), Point::new(3, 3)).unwrap();
    let sampler = ExactSampler::new(&domain, 1.0, &Budget::default()).unwrap();
    let mut rng = SamplerConfig::default().rng(0);
    c.bench_function("exact/4x4_draw", |b| b.iter(|| black_box(sampler.draw_index(&mut rng))));
}

fn hole_analysis(c: &mut Criterion) {
    let domain = GridDomain::disk(40, PI, 0.0).unwrap();
    let config = SamplerConfig::default().with_x(0.6).with_seed(2);
    let mut chain = Chain::new(&domain, &config, 0).unwrap();
    chain.sweeps(500).unwrap();
    let walk = chain.walk();
    c.bench_function("holes/r40_xi2", |b| b.iter(|| holes(black_box(&domain), &walk, 2)));
}

criterion_group!(benches, chain_sweeps, exact, hole_analysis);
criterion_main!(benches);
