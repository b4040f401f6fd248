use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use inbl::conjecture::conjecture_scan;
use inbl::hyperspace::{signal_trace, zero_fraction};
use inbl::verify::{random_suite, universe_invariance_check};
use inbl::{compile_circuit, Exec, GateCircuit, ReferenceSystem, Superposition};

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn orthogonality(c: &mut Criterion) {
    let sys = ReferenceSystem::new(4, 1).unwrap();
    let mut g = c.benchmark_group("orthogonality_report_N4_T1e5");
    for (name, exec) in STRATEGIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| sys.orthogonality_report(black_box(100_000), exec).unwrap())
        });
    }
    g.finish();
}

fn universe(c: &mut Criterion) {
    let circ = GateCircuit::chained_ascending(19).unwrap();
    let sys = ReferenceSystem::new(20, 1).unwrap();
    let prog = compile_circuit(&circ);
    let y = Superposition::universe(20).unwrap();
    let mut g = c.benchmark_group("universe_N20_T4096");
    for (name, exec) in STRATEGIES {
        g.bench_function(BenchmarkId::new("trace", name), |b| {
            b.iter(|| signal_trace(&sys, &prog, &y, black_box(4096), exec).unwrap())
        });
        g.bench_function(BenchmarkId::new("invariance", name), |b| {
            b.iter(|| universe_invariance_check(&sys, &circ, black_box(4096), exec).unwrap())
        });
    }
    g.finish();
}

fn zero_problem(c: &mut Criterion) {
    let sys = ReferenceSystem::new(10, 1).unwrap();
    let y = Superposition::universe(10).unwrap();
    let mut g = c.benchmark_group("zero_fraction_N10_T1e5");
    for (name, exec) in STRATEGIES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| zero_fraction(&sys, &y, black_box(100_000), exec).unwrap())
        });
    }
    g.finish();
}

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("suites");
    g.sample_size(10);
    for (name, exec) in STRATEGIES {
        g.bench_function(BenchmarkId::new("random_verify_20", name), |b| {
            b.iter(|| random_suite(20, black_box(7), 1024, exec).unwrap())
        });
        g.bench_function(BenchmarkId::new("conjecture_5x6_2000", name), |b| {
            b.iter(|| conjecture_scan(5, 6, 2000, black_box(7), exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, orthogonality, universe, zero_problem, suites);
criterion_main!(benches);
