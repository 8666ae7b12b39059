use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cyclecvx::formulas::exchange_formula;
use cyclecvx::independence::exchange_number_exact;
use cyclecvx::{exchange_number_brute, ProductKind};
use cyclecvx::graph::generate::{complete, path};
use cyclecvx_bench::fixtures;

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact");
    group.measurement_time(Duration::from_secs(5)).sample_size(10);
    let mut graphs = fixtures(&["cycle:12", "cycle-pendant:10", "bowtie", "chain:K3,K4,fan5@1-4"]);
    graphs.push(("K3xP4".into(), complete(3).product(&path(4), ProductKind::Cartesian).unwrap().graph));
    for (name, g) in &graphs {
        group.bench_with_input(BenchmarkId::new("pruned", name), g, |b, g| {
            b.iter(|| exchange_number_exact(g).unwrap().value)
        });
    }
    for (name, g) in fixtures(&["cycle:9", "bowtie", "cycle-pendant:8"]) {
        group.bench_with_input(BenchmarkId::new("brute", &name), &g, |b, g| {
            b.iter(|| exchange_number_brute(g).unwrap().value)
        });
    }
    group.finish();
}

fn formulas(c: &mut Criterion) {
    let mut group = c.benchmark_group("formula");
    for (name, g) in fixtures(&["cycle:200", "unicyclic:30:0,1,2,3,4,5", "chain:K4,K2,K4,K2,K4,K2,K4"]) {
        group.bench_with_input(BenchmarkId::from_parameter(&name), &g, |b, g| {
            b.iter(|| exchange_formula(g).unwrap().map(|r| r.value))
        });
    }
    group.finish();
}

criterion_group!(benches, exact, formulas);
criterion_main!(benches);
