use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use endochain::analysis::{is_subsemiring_with, Subset};
use endochain::claims::run_claims;
use endochain::triangle::TriangleSpec;
use endochain::{Exec, SimplexSpec};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn decompose(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompose");
    let t = TriangleSpec::new(24, 5, 11, 17).unwrap();
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, "n=24"), &t, |b, t| {
            b.iter(|| t.decompose_with(exec))
        });
    }
    group.finish();
}

fn closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("subsemiring");
    let s = Subset::new(SimplexSpec::new(9, &[0, 2, 4, 6, 8]).unwrap().enumerate()).unwrap();
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new(name, s.len()), &s, |b, s| {
            b.iter(|| is_subsemiring_with(s, exec))
        });
    }
    group.finish();
}

fn claim_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("claims");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "eight-region n<=7"), |b| {
            b.iter(|| run_claims(&["eight-region-partition"], 7, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, decompose, closure, claim_sweep);
criterion_main!(benches);
