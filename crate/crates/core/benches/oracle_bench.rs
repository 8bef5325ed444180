//! Compares the sequential and rayon variants of the capped trivariate
//! multiply that drives the diagonal oracle. Build with
//! `--features parallel` to include the rayon variants; without the feature
//! only the sequential baselines run.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use diag2f1_core::oracle::{dense_mul_capped_seq, multi_taylor, TriSeries};
use diag2f1_core::parse::parse_tripoly;
use diag2f1_core::rational::rat;
use diag2f1_core::tripoly::RationalFn3;
use num::BigInt;

#[cfg(feature = "parallel")]
use diag2f1_core::oracle::dense_mul_capped_par;

const DEN: &str = "3 - x - 2*y - z - x*y - 2*y*z - x*z - 2*x^2*y - y^2*z - 3*x*z^2";

fn ten_term_denominator() -> RationalFn3 {
    RationalFn3::reciprocal_of(parse_tripoly(DEN).unwrap()).unwrap()
}

/// A partially filled accumulator, as it looks midway through the expansion.
fn seeded_sparse(cap: u32) -> (TriSeries, diag2f1_core::tripoly::TriPoly) {
    let f = ten_term_denominator();
    let poly = &f.denominator - &diag2f1_core::tripoly::TriPoly::constant(rat(3));
    let mut acc = TriSeries::from_poly(&f.numerator, cap);
    for _ in 0..6 {
        acc = acc.mul_poly_capped_seq(&poly);
    }
    (acc, poly)
}

fn seeded_dense(cap: usize) -> (Vec<BigInt>, Vec<(usize, usize, usize, BigInt)>) {
    let f = ten_term_denominator();
    let n = cap + 1;
    let terms: Vec<(usize, usize, usize, BigInt)> = f
        .denominator
        .terms
        .iter()
        .filter(|(&e, _)| e != (0, 0, 0))
        .map(|(&(i, j, k), c)| (i as usize, j as usize, k as usize, c.numer().clone()))
        .collect();
    let mut acc = vec![BigInt::from(0); n * n * n];
    acc[0] = BigInt::from(1);
    for _ in 0..6 {
        acc = dense_mul_capped_seq(&acc, n, &terms);
    }
    (acc, terms)
}

fn bench_sparse_multiply(c: &mut Criterion) {
    let cap = 16;
    let (acc, poly) = seeded_sparse(cap);
    let mut g = c.benchmark_group("sparse_capped_multiply");
    g.bench_function("sequential", |b| {
        b.iter_batched(|| acc.clone(), |a| a.mul_poly_capped_seq(&poly), BatchSize::SmallInput)
    });
    #[cfg(feature = "parallel")]
    g.bench_function("rayon", |b| {
        b.iter_batched(|| acc.clone(), |a| a.mul_poly_capped_par(&poly), BatchSize::SmallInput)
    });
    g.finish();
}

fn bench_dense_multiply(c: &mut Criterion) {
    let cap = 16;
    let (acc, terms) = seeded_dense(cap);
    let n = cap + 1;
    let mut g = c.benchmark_group("dense_capped_multiply");
    g.bench_function("sequential", |b| b.iter(|| dense_mul_capped_seq(&acc, n, &terms)));
    #[cfg(feature = "parallel")]
    g.bench_function("rayon", |b| b.iter(|| dense_mul_capped_par(&acc, n, &terms)));
    g.finish();
}

fn bench_full_expansion(c: &mut Criterion) {
    let f = ten_term_denominator();
    let mut g = c.benchmark_group("multi_taylor_cap12");
    g.sample_size(10);
    let label = if cfg!(feature = "parallel") { "rayon" } else { "sequential" };
    g.bench_function(label, |b| b.iter(|| multi_taylor(&f, 12).unwrap()));
    g.finish();
}

criterion_group!(benches, bench_sparse_multiply, bench_dense_multiply, bench_full_expansion);
criterion_main!(benches);
