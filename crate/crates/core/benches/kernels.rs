use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use groverian_core::grover::{self, grover_step};
use groverian_core::qstate::overlap_gradient;
use groverian_core::zoo::{self, RandomStateSpec};
use groverian_core::{groverian_measure, Execution, MarkedSet, OptimizerOptions, ProductAngles};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn kernels(c: &mut Criterion) {
    let mut g = c.benchmark_group("kernels");
    for n in [8, 12] {
        let psi = zoo::random_state(&RandomStateSpec::new(n, 1)).unwrap();
        let angles = ProductAngles::complex(vec![0.4; n], vec![1.3; n]).unwrap();
        g.bench_with_input(BenchmarkId::new("overlap_gradient", n), &n, |b, _| {
            b.iter(|| overlap_gradient(black_box(&angles), black_box(&psi)).unwrap())
        });
        let marked = MarkedSet::single(n, 3).unwrap();
        g.bench_with_input(BenchmarkId::new("grover_step", n), &n, |b, _| {
            b.iter(|| grover_step(black_box(&psi), &marked).unwrap())
        });
    }
    g.finish();
}

fn restarts(c: &mut Criterion) {
    let mut g = c.benchmark_group("measure_restarts");
    g.sample_size(10);
    let psi = zoo::random_state(&RandomStateSpec::new(10, 7)).unwrap();
    for (name, exec) in MODES {
        let opts = OptimizerOptions::for_qubits(10).with_execution(exec);
        g.bench_function(name, |b| {
            b.iter(|| groverian_measure(black_box(&psi), &opts).unwrap())
        });
    }
    g.finish();
}

fn trajectory(c: &mut Criterion) {
    let mut g = c.benchmark_group("grover_trajectory");
    g.sample_size(10);
    let eta = zoo::eta(10).unwrap();
    let marked = MarkedSet::single(10, 0).unwrap();
    for (name, exec) in MODES {
        let opts = OptimizerOptions::for_qubits(10).with_execution(exec);
        g.bench_function(name, |b| {
            b.iter(|| grover::run(black_box(&eta), &marked, 20, true, &opts).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, kernels, restarts, trajectory);
criterion_main!(benches);
