use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use hecke_core::{oracle, parity, Exec};

const POLICIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn oracle_search(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle_types");
    g.sample_size(10);
    for (q, n) in [(3u64, 10u64), (5, 11)] {
        for (name, exec) in POLICIES {
            g.bench_with_input(BenchmarkId::new(name, format!("q{q}_n{n}")), &(q, n), |b, &(q, n)| {
                b.iter(|| oracle::enumerate_types_with(q, n, oracle::DEFAULT_BUDGET, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn lifted_parity(c: &mut Criterion) {
    let mut g = c.benchmark_group("lifted_parity");
    for (name, exec) in POLICIES {
        g.bench_function(BenchmarkId::new(name, "q3_m625_n200000"), |b| {
            b.iter(|| parity::lift_parity_range(3, black_box(625), 200_000, false, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, oracle_search, lifted_parity);
criterion_main!(benches);
