//! Compares the sequential trial loop (`workers = 1`) against the rayon
//! pool on the same experiment, so the parallel dispatch can be checked for
//! overhead and scaling at a glance.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use stochatop::experiments::{run, ExperimentConfig, Measurement, Model};
use stochatop::models::{ParamVector, Tail};

fn experiment_config() -> ExperimentConfig {
    let params = ParamVector::new(vec![0.5, 0.4], Tail::Zero, None).unwrap();
    let mut config = ExperimentConfig::new(Model::Lower, vec![16, 20], params, 24, 1234);
    config.field = "f2".to_string();
    config.measurements = vec![Measurement::Betti, Measurement::CupLength];
    config
}

fn bench_worker_scaling(c: &mut Criterion) {
    let config = experiment_config();
    let mut group = c.benchmark_group("worker_scaling");
    group.sample_size(10);
    for workers in [Some(1), Some(2), Some(4), None] {
        let label = match workers {
            Some(w) => w.to_string(),
            None => "default".to_string(),
        };
        group.bench_with_input(BenchmarkId::new("experiment", label), &workers, |b, &w| {
            b.iter(|| run(&config, w).unwrap());
        });
    }
    group.finish();
}

criterion_group!(benches, bench_worker_scaling);
criterion_main!(benches);
