use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use waring::certify::{chain, verify_chain_semantically};
use waring::subgroup::compute_trace_subgroup;
use waring::trace_power::frobenius_congruence;
use waring::{make_ring, par, verify_theorem, Budget, Ring, DEFAULT_SEED, DEFAULT_UNIVERSE};

const MODES: [(&str, bool); 2] = [("parallel", false), ("sequential", true)];

fn trace_subgroup(c: &mut Criterion) {
    let mut group = c.benchmark_group("trace_subgroup_n3");
    let ring = make_ring("Z/16").unwrap();
    for (name, sequential) in MODES {
        par::set_sequential(sequential);
        group.bench_function(BenchmarkId::new(name, "Z/16 k=9"), |b| {
            b.iter(|| compute_trace_subgroup(black_box(&ring), 9, 3, false, Budget::default()).unwrap())
        });
    }
    par::set_sequential(false);
    group.finish();
}

fn frobenius(c: &mut Criterion) {
    let mut group = c.benchmark_group("frobenius_sweep");
    let ring = make_ring("Z/4[e]/(e^2)").unwrap();
    for (name, sequential) in MODES {
        par::set_sequential(sequential);
        group.bench_function(BenchmarkId::new(name, "p=13 n=3"), |b| {
            b.iter(|| frobenius_congruence(black_box(&ring), 13, 3, 2000, DEFAULT_SEED).unwrap())
        });
    }
    par::set_sequential(false);
    group.finish();
}

fn theorem(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_theorem");
    let ring = make_ring("Z/3[x]/(x^2+1)").unwrap();
    for (name, sequential) in MODES {
        par::set_sequential(sequential);
        group.bench_function(BenchmarkId::new(name, "deg16"), |b| {
            b.iter(|| verify_theorem("deg16", black_box(&ring), Budget::default()).unwrap())
        });
    }
    par::set_sequential(false);
    group.finish();
}

fn chain_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("chain_certification");
    group.sample_size(10);
    let rings: Vec<Ring> = DEFAULT_UNIVERSE.iter().map(|s| make_ring(s).unwrap()).collect();
    let deg13 = chain("deg13").unwrap();
    for (name, sequential) in MODES {
        par::set_sequential(sequential);
        group.bench_function(BenchmarkId::new(name, "deg13 universe"), |b| {
            b.iter(|| verify_chain_semantically(&deg13, black_box(&rings), None, Budget::default()).unwrap())
        });
    }
    par::set_sequential(false);
    group.finish();
}

criterion_group!(benches, trace_subgroup, frobenius, theorem, chain_sweep);
criterion_main!(benches);
