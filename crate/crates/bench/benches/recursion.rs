use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;
use num_rational::BigRational;

use fractal_tutte::invariants::{eval_tutte_integer, spanning_trees_closed_form};
use fractal_tutte::recursion::tutte_psw;
use fractal_tutte::reliability::{psw_rel_exact, psw_rel_log, sg_rel_log};

fn symbolic(c: &mut Criterion) {
    let mut group = c.benchmark_group("tutte_psw");
    group.sample_size(10);
    for n in [1u32, 2, 3] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| tutte_psw(black_box(n)).unwrap())
        });
    }
    group.finish();
}

fn point_evaluation(c: &mut Criterion) {
    let mut group = c.benchmark_group("eval_tutte_integer_1_1");
    group.sample_size(10);
    let one = BigInt::from(1);
    for n in [6u32, 8, 10] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| eval_tutte_integer(black_box(n), &one, &one).unwrap())
        });
    }
    group.finish();
    c.bench_function("spanning_trees_closed_form_10", |b| {
        b.iter(|| spanning_trees_closed_form(black_box(10)).unwrap())
    });
}

fn reliability(c: &mut Criterion) {
    c.bench_function("psw_rel_log_30", |b| b.iter(|| psw_rel_log(black_box(30), 0.5, 0.5).unwrap()));
    c.bench_function("sg_rel_log_30", |b| b.iter(|| sg_rel_log(black_box(30), 0.5, 0.5).unwrap()));
    let p = BigRational::new(1.into(), 2.into());
    let mut group = c.benchmark_group("psw_rel_exact");
    group.sample_size(10);
    for n in [4u32, 6] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| psw_rel_exact(black_box(n), &p).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, symbolic, point_evaluation, reliability);
criterion_main!(benches);
