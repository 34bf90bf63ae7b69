use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sccat::laws::{check_law, run_suite, LawId, SuiteConfig};
use sccat::{ComplexRational, Execution};

fn executions() -> Vec<(&'static str, Execution)> {
    let mut modes = vec![("sequential", Execution::Sequential)];
    if cfg!(feature = "parallel") {
        modes.push(("parallel", Execution::default()));
    }
    modes
}

fn law_suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("law_suite_crat");
    group.sample_size(10);
    for trials in [10, 40] {
        for (label, execution) in executions() {
            let cfg = SuiteConfig::new(3, trials, 7).with_execution(execution);
            group.bench_with_input(BenchmarkId::new(label, trials), &cfg, |b, cfg| {
                b.iter(|| run_suite::<ComplexRational>(cfg))
            });
        }
    }
    group.finish();
}

fn single_law(c: &mut Criterion) {
    let mut group = c.benchmark_group("teleport_trials");
    group.sample_size(10);
    for (label, execution) in executions() {
        let cfg = SuiteConfig::new(3, 100, 7).with_execution(execution);
        group.bench_function(label, |b| b.iter(|| check_law::<ComplexRational>(LawId::Teleport, &cfg)));
    }
    group.finish();
}

criterion_group!(benches, law_suite, single_law);
criterion_main!(benches);
