use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_rational::BigRational;

use fractal_tutte::graph::{build_psw_edge_expansion, build_sierpinski};
use fractal_tutte::oracle::{
    matrix_tree_count, reliability_enumeration, subset_census, tutte_deletion_contraction,
};

fn oracles(c: &mut Criterion) {
    let g1 = build_psw_edge_expansion(1).unwrap();
    let sg1 = build_sierpinski(1).unwrap();
    let g3 = build_psw_edge_expansion(3).unwrap();
    let half = BigRational::new(1.into(), 2.into());
    c.bench_function("census_g1", |b| b.iter(|| subset_census(black_box(&g1)).unwrap()));
    c.bench_function("deletion_contraction_g1", |b| {
        b.iter(|| tutte_deletion_contraction(black_box(g1.graph())).unwrap())
    });
    c.bench_function("reliability_enumeration_sg1", |b| {
        b.iter(|| reliability_enumeration(black_box(&sg1), &half).unwrap())
    });
    c.bench_function("matrix_tree_g3", |b| b.iter(|| matrix_tree_count(black_box(g3.graph())).unwrap()));
}

criterion_group!(benches, oracles);
criterion_main!(benches);
