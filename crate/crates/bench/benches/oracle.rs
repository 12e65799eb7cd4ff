use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fockdual::duality::{joint_hw_oracle, weight_blocks};
use fockdual::{verify_duality, Duality, Family};
use fockdual_bench::{params, ORACLE_POINTS};

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("joint_hw_oracle");
    group.sample_size(10);
    for (d, k, fam) in ORACLE_POINTS {
        let p = params(d, k, fam);
        group.bench_with_input(BenchmarkId::from_parameter(format!("d{d}k{k}{fam:?}")), &p, |b, p| {
            b.iter(|| joint_hw_oracle(black_box(p)).unwrap())
        });
    }
    group.finish();
}

fn blocks(c: &mut Criterion) {
    let p = params(6, 2, Family::Orthogonal);
    c.bench_function("weight_blocks d6k2", |b| b.iter(|| weight_blocks(black_box(&p))));
}

fn verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_duality");
    group.sample_size(10);
    for du in [Duality::OO, Duality::OPin] {
        let p = params(4, 2, Family::Orthogonal);
        group.bench_function(du.name(), |b| b.iter(|| verify_duality(black_box(&p), du).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, oracle, blocks, verify);
criterion_main!(benches);
