use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use periodpoly::closed_form::factor;
use periodpoly::periods::brute_force;
use periodpoly::sweep::CyclicGroup;
use periodpoly::{Execution, FieldCtx, DEFAULT_MAX_Q};

const FIELDS: [(u64, u32, u64); 3] = [(3, 8, 16), (5, 6, 8), (3, 12, 16)];

fn modes() -> Vec<(&'static str, Execution)> {
    let mut out = vec![("sequential", Execution::Sequential)];
    if cfg!(feature = "parallel") {
        out.push(("parallel", Execution::Parallel));
    }
    out
}

fn residue_trace_counts(c: &mut Criterion) {
    let mut group = c.benchmark_group("residue_trace_counts");
    group.sample_size(10);
    for (p, s, e) in FIELDS {
        let ctx = FieldCtx::new(p, s).unwrap();
        let cyclic = CyclicGroup::full(&ctx);
        group.throughput(Throughput::Elements(cyclic.order()));
        for (name, exec) in modes() {
            group.bench_with_input(BenchmarkId::new(name, format!("{p}^{s}")), &e, |b, &e| {
                b.iter(|| cyclic.residue_trace_counts(black_box(e), DEFAULT_MAX_Q, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn oracle_against_closed_form(c: &mut Criterion) {
    let mut group = c.benchmark_group("period_polynomial");
    group.sample_size(10);
    let ctx = FieldCtx::new(5, 8).unwrap();
    for (name, exec) in modes() {
        group.bench_function(BenchmarkId::new("brute_force", name), |b| {
            b.iter(|| brute_force(&ctx, 16, DEFAULT_MAX_Q, exec).unwrap())
        });
    }
    group.bench_function("closed_form", |b| b.iter(|| factor(&ctx, 4).unwrap().expand()));
    group.finish();
}

criterion_group!(benches, residue_trace_counts, oracle_against_closed_form);
criterion_main!(benches);
