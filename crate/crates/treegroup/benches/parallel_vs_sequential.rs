//! The same workloads under `Execution::Sequential` and `Execution::Parallel`.
//! Without the `parallel` feature both variants run on one thread.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use treegroup::groups::{nucleus, LevelQuotient, QuotientOptions};
use treegroup::lpres::{verify_relators, LPresentation};
use treegroup::{zoo, Execution};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn layered_quotient(c: &mut Criterion) {
    let b = zoo::generalised_basilica(1, 2, 2).unwrap();
    let mut group = c.benchmark_group("layered quotient bp2(O2)");
    group.sample_size(10);
    for (name, exec) in MODES {
        let opts = QuotientOptions { exec, ..QuotientOptions::default() };
        group.bench_with_input(BenchmarkId::new(name, 10), &opts, |bench, opts| {
            bench.iter(|| LevelQuotient::with_options(&b, 10, *opts).unwrap().log_order())
        });
    }
    group.finish();
}

fn generic_quotient(c: &mut Criterion) {
    let g = zoo::grigorchuk();
    let mut group = c.benchmark_group("schreier-sims grigorchuk");
    group.sample_size(10);
    for (name, exec) in MODES {
        let opts = QuotientOptions { exec, force_generic: true, ..QuotientOptions::default() };
        group.bench_with_input(BenchmarkId::new(name, 7), &opts, |bench, opts| {
            bench.iter(|| LevelQuotient::with_options(&g, 7, *opts).unwrap().order())
        });
    }
    group.finish();
}

fn relators(c: &mut Criterion) {
    let p = LPresentation::new(1, 2, 3).unwrap();
    let b = zoo::generalised_basilica(1, 2, 3).unwrap();
    let rels = p.relators(3, 2);
    let mut group = c.benchmark_group("verify relators (1,2,3)");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |bench| bench.iter(|| verify_relators(&b, &rels, exec).unwrap().holds()));
    }
    group.finish();
}

fn nucleus_search(c: &mut Criterion) {
    let b = zoo::generalised_basilica(1, 2, 3).unwrap();
    let mut group = c.benchmark_group("nucleus bp3(O2)");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |bench| bench.iter(|| nucleus(&b, 64, 5000, exec).unwrap().len()));
    }
    group.finish();
}

criterion_group!(benches, layered_quotient, generic_quotient, relators, nucleus_search);
criterion_main!(benches);
