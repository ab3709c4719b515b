use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use polya_bench::SAMPLE_FIELDS;
use polya_core::oracle::ambiguous_ideals;
use polya_core::quadratic::ambiguous_oracle_quad;
use polya_core::{polya_order_oracle, polya_report, principality_k, BiquadField, OracleConfig, QuadraticField};

fn construction(c: &mut Criterion) {
    let mut group = c.benchmark_group("construct");
    for (d1, d2) in SAMPLE_FIELDS {
        group.bench_with_input(BenchmarkId::from_parameter(format!("{d1},{d2}")), &(d1, d2), |b, &(d1, d2)| {
            b.iter(|| BiquadField::new(black_box(d1), black_box(d2)).unwrap())
        });
    }
    group.finish();
}

fn formulas(c: &mut Criterion) {
    let cfg = OracleConfig::default();
    let mut group = c.benchmark_group("polya_report");
    for (d1, d2) in SAMPLE_FIELDS {
        let k = BiquadField::new(d1, d2).unwrap();
        group.bench_function(BenchmarkId::from_parameter(format!("{d1},{d2}")), |b| {
            b.iter(|| polya_report(black_box(&k), &cfg).unwrap())
        });
    }
    group.finish();
}

fn principality(c: &mut Criterion) {
    let cfg = OracleConfig::default();
    let mut group = c.benchmark_group("principality");
    for (d1, d2) in SAMPLE_FIELDS {
        let k = BiquadField::new(d1, d2).unwrap();
        let ideals = ambiguous_ideals(&k).unwrap();
        group.bench_function(BenchmarkId::from_parameter(format!("{d1},{d2}")), |b| {
            b.iter(|| {
                for a in &ideals {
                    black_box(principality_k(&k, a, &cfg).unwrap());
                }
            })
        });
    }
    group.finish();
}

fn class_counting(c: &mut Criterion) {
    let cfg = OracleConfig::default();
    let mut group = c.benchmark_group("class_counting");
    group.sample_size(20);
    for (d1, d2) in SAMPLE_FIELDS {
        let k = BiquadField::new(d1, d2).unwrap();
        group.bench_function(BenchmarkId::new("biquadratic", format!("{d1},{d2}")), |b| {
            b.iter(|| polya_order_oracle(black_box(&k), &cfg).unwrap())
        });
    }
    for d in [-5i64, 94, 130, -143] {
        let k = QuadraticField::new(d).unwrap();
        group.bench_function(BenchmarkId::new("quadratic", d), |b| {
            b.iter(|| ambiguous_oracle_quad(black_box(&k), &cfg).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, construction, formulas, principality, class_counting);
criterion_main!(benches);
