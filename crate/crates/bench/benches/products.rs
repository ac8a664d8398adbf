use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use kneser_lab_bench::sample_codes;
use kneser_lab_core::stabilizer::stabilizer;

fn schur_products(c: &mut Criterion) {
    let mut group = c.benchmark_group("schur_product");
    for p in [2u32, 3, 5] {
        let codes = sample_codes(p, 10, 64, 0xC0DE);
        group.bench_with_input(BenchmarkId::from_parameter(p), &codes, |b, codes| {
            let mut i = 0;
            b.iter(|| {
                let a = &codes[i % codes.len()];
                let d = &codes[(i + 1) % codes.len()];
                i += 1;
                black_box(a.schur_product(d).unwrap())
            })
        });
    }
    group.finish();
}

fn powers(c: &mut Criterion) {
    let codes = sample_codes(3, 10, 64, 0xBEEF);
    c.bench_function("power_k4", |b| {
        let mut i = 0;
        b.iter(|| {
            let code = &codes[i % codes.len()];
            i += 1;
            black_box(code.power(4).unwrap())
        })
    });
}

fn stabilizers(c: &mut Criterion) {
    let codes = sample_codes(3, 10, 64, 0xFEED);
    c.bench_function("stabilizer", |b| {
        let mut i = 0;
        b.iter(|| {
            let code = &codes[i % codes.len()];
            i += 1;
            black_box(stabilizer(code))
        })
    });
}

fn binary_points(c: &mut Criterion) {
    let codes = sample_codes(3, 12, 32, 0xFACE);
    c.bench_function("binary_point_count", |b| {
        let mut i = 0;
        b.iter(|| {
            let code = &codes[i % codes.len()];
            i += 1;
            black_box(code.binary_point_count().unwrap())
        })
    });
}

criterion_group!(benches, schur_products, powers, stabilizers, binary_points);
criterion_main!(benches);
