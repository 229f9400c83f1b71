//! Benchmarks for the hot paths: field enumeration, exact Gram
//! construction, and shape reduction.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use qshape_core::enumerate::{count_c_tau, enumerate_fields, Filters};
use qshape_core::field::PureQuarticField;
use qshape_core::gram::{gram, project_perp};
use qshape_core::reduce::minkowski_reduce;
use qshape_core::region::count_r_exact;

fn bench_enumeration(c: &mut Criterion) {
    c.bench_function("enumerate_fields N=1000", |b| {
        b.iter(|| enumerate_fields(black_box(1000.0), &Filters::default(), 1))
    });
    c.bench_function("count_c_tau N=1e5 tau=3", |b| {
        b.iter(|| count_c_tau(black_box(1e5), 4.0, 3.0, 3, 1).unwrap())
    });
    c.bench_function("count_r_exact N=1e5", |b| {
        b.iter(|| count_r_exact(black_box(1e5), 4.0, 3.0))
    });
}

fn bench_exact_gram(c: &mut Criterion) {
    let fields: Vec<PureQuarticField> = (2..200)
        .filter_map(|m| PureQuarticField::new(m).ok())
        .collect();
    c.bench_function("exact gram + det, m in [2, 200)", |b| {
        b.iter(|| {
            for f in &fields {
                black_box(gram(f).det());
            }
        })
    });
}

fn bench_reduction(c: &mut Criterion) {
    let projected: Vec<_> = (2..200)
        .filter_map(|m| PureQuarticField::new(m).ok())
        .map(|f| project_perp(&gram(&f)).to_f64())
        .collect();
    c.bench_function("minkowski_reduce, m in [2, 200)", |b| {
        b.iter(|| {
            for g in &projected {
                black_box(minkowski_reduce(g).unwrap());
            }
        })
    });
}

criterion_group!(benches, bench_enumeration, bench_exact_gram, bench_reduction);
criterion_main!(benches);
