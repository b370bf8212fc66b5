//! Timings for the hot paths of a census: resultants, factoring over Z,
//! classification and a small end-to-end box.

use std::hint::black_box;

use brecip_bench::{cyclotomic_five, dense_poly};
use brecip_core::census::{run_census, CensusConfig};
use brecip_core::conic::primitive_points;
use brecip_core::galois::{classify, frobenius_audit, Verdict};
use brecip_core::intpoly::{discriminant, factor_over_z, resultant};
use brecip_core::{BRecipPoly, ClassifyOptions, FamilyKind};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn bench_resultant(c: &mut Criterion) {
    let mut group = c.benchmark_group("resultant");
    for d in [4usize, 8, 12] {
        let p = dense_poly(d, 99, 1);
        let q = dense_poly(d, 99, 2);
        group.bench_with_input(BenchmarkId::new("dense", d), &d, |b, _| {
            b.iter(|| resultant(black_box(&p), black_box(&q)))
        });
        group.bench_with_input(BenchmarkId::new("discriminant", d), &d, |b, _| {
            b.iter(|| discriminant(black_box(&p)))
        });
    }
    group.finish();
}

fn bench_factor(c: &mut Criterion) {
    let mut group = c.benchmark_group("factor_over_z");
    for d in [4usize, 6, 8] {
        let irreducible = dense_poly(d, 99, 3);
        let product = &dense_poly(d / 2, 99, 4) * &dense_poly(d / 2, 99, 5);
        group.bench_with_input(BenchmarkId::new("random", d), &d, |b, _| {
            b.iter(|| factor_over_z(black_box(&irreducible)))
        });
        group.bench_with_input(BenchmarkId::new("product", d), &d, |b, _| {
            b.iter(|| factor_over_z(black_box(&product)))
        });
    }
    // Swinnerton-Dyer style worst case: splits into many factors mod every prime.
    let x8 = brecip_core::IntPoly::from_i64s(&[576, 0, -960, 0, 352, 0, -40, 0, 1]);
    group.bench_function("sqrt_2_3_5_minimal", |b| b.iter(|| factor_over_z(black_box(&x8))));
    group.finish();
}

fn bench_classify(c: &mut Criterion) {
    let opts = ClassifyOptions::default();
    let mut group = c.benchmark_group("classify");
    group.bench_function("cyclotomic_five", |b| {
        let w = cyclotomic_five();
        b.iter(|| classify(black_box(&w), &opts))
    });
    for n in [3usize, 4, 5] {
        let w = BRecipPoly::new(n, 2, dense_poly(n, 20, 6)).unwrap();
        group.bench_with_input(BenchmarkId::new("dense", n), &n, |b, _| {
            b.iter(|| classify(black_box(&w), &opts))
        });
    }
    let g3 = BRecipPoly::from_i64s(1, &[-10, -10, -10, 10]).unwrap();
    group.bench_function("g3_resolvent_hit", |b| b.iter(|| classify(black_box(&g3), &opts)));
    group.finish();
    c.bench_function("audit/cyclotomic_five_50_primes", |b| {
        let w = cyclotomic_five();
        b.iter(|| frobenius_audit(black_box(&w), Verdict::G2, 50))
    });
}

fn bench_conic(c: &mut Criterion) {
    c.bench_function("conic/primitive_points_b2_h1000", |b| {
        b.iter(|| primitive_points(black_box(2), black_box(1000)))
    });
}

fn bench_census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    for (name, kind, n, b, heights) in [
        ("breciprocal_n1", FamilyKind::BReciprocal, 1, -1, vec![50u64, 100, 200]),
        ("breciprocal_n2", FamilyKind::BReciprocal, 2, -1, vec![5, 10, 20]),
        ("monic_n3", FamilyKind::BReciprocalMonic, 3, 1, vec![2, 4, 8]),
    ] {
        let mut cfg = CensusConfig::new(kind, n, b, heights);
        cfg.threads = 1;
        group.bench_function(name, |bch| bch.iter(|| run_census(black_box(&cfg)).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, bench_resultant, bench_factor, bench_classify, bench_conic, bench_census);
criterion_main!(benches);
