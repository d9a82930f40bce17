use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use orthocentric::batch::verify_all;
use orthocentric::generate::corpus;
use orthocentric::par::Parallelism;
use orthocentric::verify::VerifyOptions;

fn bench_verify(c: &mut Criterion) {
    let configs: Vec<_> = corpus(7, 200, &[2, 3, 4, 5, 6], 5, Parallelism::Sequential)
        .unwrap()
        .iter()
        .map(|inst| inst.config())
        .collect();
    let opts = VerifyOptions::default();
    let mut group = c.benchmark_group("verify_corpus");
    group.sample_size(10);
    let mut modes = vec![("sequential", Parallelism::Sequential)];
    if Parallelism::available() {
        modes.push(("parallel", Parallelism::Parallel));
    }
    for (name, mode) in modes {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| verify_all(&configs, mode, &opts))
        });
    }
    group.finish();
}

fn bench_generate(c: &mut Criterion) {
    let mut group = c.benchmark_group("generate_corpus");
    group.sample_size(10);
    for (name, mode) in [
        ("sequential", Parallelism::Sequential),
        ("parallel", Parallelism::Parallel),
    ] {
        group.bench_function(name, |b| b.iter(|| corpus(11, 200, &[3, 4], 5, mode).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, bench_verify, bench_generate);
criterion_main!(benches);
