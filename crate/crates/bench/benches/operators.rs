use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use fockdual::lie::{generator_set, Side};
use fockdual::ph::{conjugation_ops, ShellKinds, ShellParams};
use fockdual::pin::{sigma_delta, sigma_exchange};
use fockdual::Family;
use fockdual_bench::params;

fn generators(c: &mut Criterion) {
    let p = params(6, 2, Family::Orthogonal);
    c.bench_function("generator_set d6k2 both sides", |b| {
        b.iter(|| {
            let d = generator_set(Side::D, black_box(&p)).unwrap();
            let k = generator_set(Side::K, black_box(&p)).unwrap();
            (d.len(), k.len())
        })
    });
}

fn commutator(c: &mut Criterion) {
    let p = params(6, 2, Family::Orthogonal);
    let d = generator_set(Side::D, &p).unwrap();
    let k = generator_set(Side::K, &p).unwrap();
    c.bench_function("commutator 4096-dim", |b| b.iter(|| black_box(&d[0].1).commutator(black_box(&k[0].1)).unwrap()));
}

fn sigma(c: &mut Criterion) {
    let p = params(5, 2, Family::Orthogonal);
    c.bench_function("sigma exchange d5k2", |b| b.iter(|| sigma_exchange(1, black_box(&p)).unwrap()));
    c.bench_function("sigma delta d5k2", |b| b.iter(|| sigma_delta(1, black_box(&p)).unwrap()));
}

fn particle_hole(c: &mut Criterion) {
    let mut group = c.benchmark_group("conjugation_ops");
    group.sample_size(10);
    group.bench_function("l1", |b| {
        b.iter(|| conjugation_ops(black_box(&ShellParams::new(1, ShellKinds::Spin))).unwrap())
    });
    group.finish();
}

criterion_group!(benches, generators, commutator, sigma, particle_hole);
criterion_main!(benches);
