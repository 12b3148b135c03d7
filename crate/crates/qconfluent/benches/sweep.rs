use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qconfluent::runner::{run_trials, sample_until, Exec};
use qconfluent::solutions::{construct, SolutionId};
use qconfluent::verify::verify_solution;

fn sweep(exec: Exec, ids: &[SolutionId], trials: usize) -> usize {
    ids.iter()
        .map(|id| {
            run_trials(exec, 7, &id.to_string(), trials, |rng| {
                let (p, sol) = sample_until(id.family(), rng, |p| construct(id, p, 12)).ok()?;
                verify_solution(&p, &sol, 6).ok().map(|r| r.pass)
            })
            .into_iter()
            .filter(|r| *r == Some(true))
            .count()
        })
        .sum()
}

fn bench_sweep(c: &mut Criterion) {
    let ids: Vec<SolutionId> = ["C12:T31-ii", "B02:T41-i", "D2:P21-ii:12", "C21:T51-i:12"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let mut group = c.benchmark_group("verify_sweep");
    group.sample_size(10);
    for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| sweep(exec, &ids, 8))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_sweep);
criterion_main!(benches);
