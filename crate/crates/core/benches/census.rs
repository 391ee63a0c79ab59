use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use vote_manip::census::{run_census_with, CensusSpec, Enumeration, Execution};
use vote_manip::manipulation::{Notion, UncertaintySet};
use vote_manip::{Candidates, DominanceKind};

fn spec(n: usize, m: usize) -> CensusSpec {
    let labels = Candidates::default_labels(n).unwrap();
    let sets = ["borda", "plurality+copeland", "strict_nanson", "borda+strict_nanson"]
        .iter()
        .map(|s| UncertaintySet::parse(s, &labels).unwrap())
        .collect();
    CensusSpec::exhaustive(n, m, Notion::Sure, DominanceKind::Weak, sets)
}

fn workers(c: &mut Criterion) {
    let spec = spec(3, 5);
    let cores = std::thread::available_parallelism().map_or(1, usize::from);
    let mut group = c.benchmark_group("labeled_3x5");
    group.sample_size(10);
    for w in [1, cores] {
        let exec = Execution {
            workers: w,
            enumeration: Enumeration::Labeled,
        };
        group.bench_with_input(BenchmarkId::new("workers", w), &exec, |b, exec| {
            b.iter(|| run_census_with(&spec, exec).unwrap())
        });
    }
    group.finish();
}

fn enumeration(c: &mut Criterion) {
    let spec = spec(3, 6);
    let mut group = c.benchmark_group("enumeration_3x6");
    group.sample_size(10);
    for (name, enumeration) in [("labeled", Enumeration::Labeled), ("grouped", Enumeration::Grouped)] {
        for w in [1, 4] {
            let exec = Execution { workers: w, enumeration };
            group.bench_with_input(BenchmarkId::new(name, w), &exec, |b, exec| {
                b.iter(|| run_census_with(&spec, exec).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, workers, enumeration);
criterion_main!(benches);
