//! Bulk workloads on the global rayon pool against a one-thread pool.
//!
//! Built without the `parallel` feature both arms run sequentially.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use zca::builtin::game_of_life_ca;
use zca::corpus::elementary_corpus;
use zca::onedim::{goe_crosscheck, padic_tower_report};
use zca::quotient::quotient_map;
use zca::{Lattice, DEFAULT_BUDGET};

type Workload<'a> = (&'static str, Box<dyn Fn() + Sync + 'a>);

fn workloads(c: &mut Criterion) {
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("thread pool");
    let corpus = elementary_corpus();
    let life = game_of_life_ca();
    let torus = Lattice::diagonal(&[4, 4]).expect("lattice");

    let mut group = c.benchmark_group("parallel_vs_sequential");
    group.sample_size(10);
    let cases: [Workload; 3] = [
        (
            "goe_crosscheck_256",
            Box::new(|| {
                goe_crosscheck(&corpus, DEFAULT_BUDGET).expect("crosscheck");
            }),
        ),
        (
            "life_quotient_4x4",
            Box::new(|| {
                quotient_map(&life, &torus, DEFAULT_BUDGET).expect("quotient");
            }),
        ),
        (
            "padic_tower_3_5",
            Box::new(|| {
                padic_tower_report(3, 5, DEFAULT_BUDGET).expect("tower");
            }),
        ),
    ];
    for (name, work) in &cases {
        group.bench_function(BenchmarkId::new("pool", name), |b| b.iter(work));
        group.bench_function(BenchmarkId::new("one_thread", name), |b| {
            b.iter(|| single.install(work))
        });
    }
    group.finish();
}

criterion_group!(benches, workloads);
criterion_main!(benches);
