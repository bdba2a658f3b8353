use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use curvkind_bench::fixture;
use curvkind_core::four_dim::rhat9;
use curvkind_core::{min_isotropic, second_kind_matrix, BasisConvention, IsotropicMode};
use std::hint::black_box;

fn second_kind(c: &mut Criterion) {
    let mut g = c.benchmark_group("second_kind_matrix");
    for n in [4, 6, 8] {
        let r = fixture(n, 0);
        g.bench_with_input(BenchmarkId::from_parameter(n), &r, |b, r| {
            b.iter(|| second_kind_matrix(black_box(r), BasisConvention::Orthonormal).unwrap())
        });
    }
    g.finish();
}

fn four_dim(c: &mut Criterion) {
    let r = fixture(4, 1);
    c.bench_function("rhat9", |b| b.iter(|| rhat9(black_box(&r)).unwrap()));
    c.bench_function("second_kind_matrix/paper-h", |b| {
        b.iter(|| second_kind_matrix(black_box(&r), BasisConvention::PaperH).unwrap())
    });
}

fn isotropic(c: &mut Criterion) {
    let mut g = c.benchmark_group("min_isotropic");
    g.sample_size(10);
    for n in [4, 5] {
        let r = fixture(n, 2);
        for mode in [IsotropicMode::Pic, IsotropicMode::Pic1, IsotropicMode::Pic2] {
            g.bench_with_input(BenchmarkId::new(mode.name(), n), &r, |b, r| {
                b.iter(|| min_isotropic(black_box(r), mode, 8, 0).unwrap())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, second_kind, four_dim, isotropic);
criterion_main!(benches);
