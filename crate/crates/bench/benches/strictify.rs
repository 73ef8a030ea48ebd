use cosegal::commutative::strictify_commutative;
use cosegal::laxdiag::{gamma, validate};
use cosegal::strictify::strictify;
use cosegal_bench::{circle_chain, cylinder_diagram, symmetric_diagram};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn strictification(c: &mut Criterion) {
    let mut group = c.benchmark_group("strictify");
    group.sample_size(10);
    for (objects, truncation) in [(1, 3), (2, 2), (2, 3)] {
        let f = cylinder_diagram(objects, truncation);
        group.bench_function(format!("cylinder X={objects} L={truncation}"), |b| {
            b.iter(|| strictify(black_box(&f), 1).unwrap())
        });
    }
    let sym = symmetric_diagram(2);
    group.bench_function("symmetric cylinder N=2", |b| b.iter(|| strictify_commutative(black_box(&sym), 1).unwrap()));
    group.finish();
}

fn free_diagrams(c: &mut Criterion) {
    let mut group = c.benchmark_group("gamma");
    group.sample_size(10);
    for truncation in [2, 3] {
        let f = cylinder_diagram(2, truncation);
        group.bench_function(format!("cylinder L={truncation}"), |b| b.iter(|| gamma(black_box(f.bundle())).unwrap()));
    }
    group.finish();
}

fn validation(c: &mut Criterion) {
    let f = cylinder_diagram(2, 3);
    c.bench_function("validate cylinder X=2 L=3", |b| b.iter(|| validate(black_box(&f))));
}

fn colimits(c: &mut Criterion) {
    let mut group = c.benchmark_group("colimit");
    for copies in [4, 16, 64] {
        group.bench_function(format!("circle chain {copies}"), |b| b.iter(|| circle_chain(black_box(copies))));
    }
    group.finish();
}

criterion_group!(benches, strictification, free_diagrams, validation, colimits);
criterion_main!(benches);
