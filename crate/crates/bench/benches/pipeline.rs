use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use fermat_jacobian::monomial::{RelationChecker, Word};
use fermat_jacobian::verify::monomial_suite;
use fermat_jacobian::{decompose_fine, orbit_partition, verify, Depth, PrimeContext};

fn ctx(p: u64) -> PrimeContext {
    PrimeContext::new(p).expect("prime")
}

fn orbits(c: &mut Criterion) {
    let mut g = c.benchmark_group("orbit_partition");
    for p in [13u64, 101, 997, 9973] {
        let cx = ctx(p);
        g.bench_with_input(BenchmarkId::from_parameter(p), &cx, |b, cx| {
            b.iter(|| orbit_partition(black_box(cx)))
        });
    }
    g.finish();
}

fn fine(c: &mut Criterion) {
    let mut g = c.benchmark_group("decompose_fine");
    for p in [7u64, 13, 31, 97] {
        let cx = ctx(p);
        g.bench_with_input(BenchmarkId::from_parameter(p), &cx, |b, cx| {
            b.iter(|| decompose_fine(black_box(cx)).unwrap())
        });
    }
    g.finish();
}

fn verify_depths(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    for p in [7u64, 13] {
        let cx = ctx(p);
        g.bench_with_input(BenchmarkId::new("basic", p), &cx, |b, cx| {
            b.iter(|| verify(black_box(cx), Depth::Basic).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("full", p), &cx, |b, cx| {
            b.iter(|| verify(black_box(cx), Depth::Full).unwrap())
        });
    }
    g.finish();
}

fn monomial(c: &mut Criterion) {
    let mut g = c.benchmark_group("monomial_relations");
    for p in [7u64, 13, 31] {
        let cx = ctx(p);
        g.bench_with_input(BenchmarkId::from_parameter(p), &cx, |b, cx| {
            b.iter(|| monomial_suite(black_box(cx)).unwrap())
        });
    }
    let cx = ctx(13);
    let gamma = cx.gamma_pair().expect("13 = 1 mod 3").0;
    let checker = RelationChecker::new(&cx, gamma).unwrap();
    let word = Word::parse("T^-1 R T^1 R^2").unwrap();
    g.bench_function("evaluate_word_p13", |b| {
        b.iter(|| checker.evaluate(black_box(&word)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, orbits, fine, verify_depths, monomial);
criterion_main!(benches);
