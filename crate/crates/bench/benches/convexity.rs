use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cyclecvx::convexity::Closure;
use cyclecvx::VertexSet;
use cyclecvx_bench::fixtures;

fn hulls(c: &mut Criterion) {
    let mut group = c.benchmark_group("hull");
    for (name, g) in fixtures(&["cycle:64", "cycle:200", "complete:40", "chain:K4,fan6@1-5,K4,fan6@1-5,K4"]) {
        let n = g.order();
        // Everything but one vertex: the slowest-converging seed on a cycle.
        let seed = VertexSet::from_ids(n, 1..n);
        let pair = VertexSet::from_ids(n, [0, 1]);
        let mut closure = Closure::new(&g);
        group.bench_with_input(BenchmarkId::new("all-but-one", &name), &seed, |b, s| {
            b.iter(|| closure.hull(s))
        });
        group.bench_with_input(BenchmarkId::new("pair", &name), &pair, |b, s| {
            b.iter(|| closure.hull(s))
        });
    }
    group.finish();
}

criterion_group!(benches, hulls);
criterion_main!(benches);
