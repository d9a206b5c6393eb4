use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rayon::ThreadPoolBuilder;
use tubelat::{poset, tubing, weakorder, Graph};

fn pools() -> Vec<(&'static str, rayon::ThreadPool)> {
    vec![
        ("sequential", ThreadPoolBuilder::new().num_threads(1).build().unwrap()),
        ("parallel", ThreadPoolBuilder::new().build().unwrap()),
    ]
}

fn psi_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("psi_sweep");
    group.sample_size(10);
    for desc in ["path:7", "cycle:7", "complete:7"] {
        let g = Graph::from_descriptor(desc).unwrap();
        for (name, pool) in pools() {
            group.bench_with_input(BenchmarkId::new(name, desc), &g, |b, g| {
                b.iter(|| pool.install(|| weakorder::psi_fibers(g).len()))
            });
        }
    }
    group.finish();
}

fn lattice_pairs(c: &mut Criterion) {
    let mut group = c.benchmark_group("lattice_pairs");
    group.sample_size(10);
    for desc in ["path:6", "cycle:6"] {
        let g = Graph::from_descriptor(desc).unwrap();
        for (name, pool) in pools() {
            group.bench_with_input(BenchmarkId::new(name, desc), &g, |b, g| {
                b.iter(|| pool.install(|| poset::build_lg(g).unwrap().is_lattice()))
            });
        }
    }
    group.finish();
}

fn map_check(c: &mut Criterion) {
    let mut group = c.benchmark_group("lattice_map");
    group.sample_size(10);
    let g = Graph::from_descriptor("path:6").unwrap();
    for (name, pool) in pools() {
        group.bench_function(name, |b| {
            b.iter(|| pool.install(|| weakorder::is_lattice_quotient_map(&g).unwrap().holds()))
        });
    }
    group.bench_function("enumerate_only", |b| b.iter(|| tubing::enumerate_maximal_tubings(&g).len()));
    group.finish();
}

criterion_group!(benches, psi_sweep, lattice_pairs, map_check);
criterion_main!(benches);
