use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use hyperoval_bench::{conic_pair, operand_pairs};
use hyperoval_core::absfactor::{abs_irr_verdict, factor_over};
use hyperoval_core::curve::build_gk;
use hyperoval_core::hyperoval::{determinant_test, perm_poly_test};
use hyperoval_core::intersect::intersection_number;
use hyperoval_core::FieldCtx;

fn field_mul(c: &mut Criterion) {
    let mut group = c.benchmark_group("field_mul");
    for e in [8u32, 16, 32] {
        let (ctx, pairs) = operand_pairs(e, 1024);
        group.bench_with_input(BenchmarkId::from_parameter(e), &pairs, |b, pairs| {
            b.iter(|| pairs.iter().fold(0u32, |acc, &(x, y)| acc ^ ctx.mul(x, y)))
        });
    }
    group.finish();
}

fn field_inv(c: &mut Criterion) {
    let (ctx, pairs) = operand_pairs(24, 256);
    c.bench_function("field_inv/24", |b| {
        b.iter(|| pairs.iter().filter_map(|&(x, _)| ctx.inv(x)).fold(0u32, |a, y| a ^ y))
    });
}

fn hyperoval_tests(c: &mut Criterion) {
    let mut group = c.benchmark_group("hyperoval");
    group.sample_size(20);
    for e in [10u32, 14] {
        group.bench_with_input(BenchmarkId::new("perm", e), &e, |b, &e| b.iter(|| perm_poly_test(black_box(6), e)));
    }
    group.bench_function("det/6", |b| b.iter(|| determinant_test(black_box(6), 6)));
    group.finish();
}

fn factorization(c: &mut Criterion) {
    let mut group = c.benchmark_group("factor_over_gf2");
    group.sample_size(10);
    for k in [10u64, 16, 22, 32] {
        let g = build_gk(k).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(k), &g, |b, g| b.iter(|| factor_over(g, &FieldCtx::gf2())));
    }
    group.finish();

    let mut group = c.benchmark_group("abs_irr_verdict");
    group.sample_size(10);
    for k in [12u64, 32] {
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| b.iter(|| abs_irr_verdict(k)));
    }
    group.finish();
}

fn intersection(c: &mut Criterion) {
    let (u, v, a, b) = conic_pair();
    c.bench_function("intersection_number/g6_conics", |bench| {
        bench.iter(|| intersection_number(black_box(&u), black_box(&v), &a, &b))
    });
}

criterion_group!(benches, field_mul, field_inv, hyperoval_tests, factorization, intersection);
criterion_main!(benches);
