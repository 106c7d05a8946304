use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use amicable::amicability::PreservationConfig;
use amicable::matrices::count_formula_total;
use amicable::verify::{census, counting, lemma_w, matrix_theorem, pair_pool, preserve};
use amicable::Strategy;

const STRATEGIES: [(&str, Strategy); 2] = [("sequential", Strategy::Sequential), ("parallel", Strategy::Parallel)];

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweeps");
    group.sample_size(10);
    for (name, strategy) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new("counting/norm10", name), &strategy, |b, &s| {
            b.iter(|| counting(10, s, count_formula_total).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("lemma_w/N18", name), &strategy, |b, &s| {
            b.iter(|| lemma_w(18, s).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("matrices/norm9", name), &strategy, |b, &s| {
            b.iter(|| matrix_theorem(9, s).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("census/norm12", name), &strategy, |b, &s| {
            b.iter(|| census(12, s).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("pair_pool/norm10", name), &strategy, |b, &s| {
            b.iter(|| pair_pool(10, s).unwrap())
        });
        let config = PreservationConfig { n: 300, kmax: 10 };
        group.bench_with_input(BenchmarkId::new("preserve/norm4", name), &strategy, |b, &s| {
            b.iter(|| preserve(4, config, s).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
