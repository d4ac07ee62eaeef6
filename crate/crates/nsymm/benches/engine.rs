//! Parallel-versus-sequential benchmarks for the data-parallel hot spots:
//! isobaric table levels, large polynomial products, and a whole
//! verification suite. With the default `parallel` feature both modes are
//! measured in one run via the runtime switch; building with
//! `--no-default-features` compiles the sequential path alone.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use nsymm::exec;
use nsymm::isobaric::{IsobaricTable, TableKind};
use nsymm::verify::{run_suite, RunConfig};
use nsymm::{int, Host, Letter, NcPoly, Word};

fn with_mode<T>(parallel: bool, f: impl FnOnce() -> T) -> T {
    exec::set_parallel(parallel);
    let out = f();
    exec::set_parallel(true);
    out
}

fn bench_l_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("l_table_w9");
    group.sample_size(10);
    group.bench_function("seq", |b| {
        b.iter(|| with_mode(false, || black_box(IsobaricTable::build(TableKind::LWl, 9))))
    });
    #[cfg(feature = "parallel")]
    group.bench_function("par", |b| {
        b.iter(|| with_mode(true, || black_box(IsobaricTable::build(TableKind::LWl, 9))))
    });
    group.finish();
}

fn big_poly(seed: u32) -> NcPoly {
    let mut p = NcPoly::zero(Host::NSymm);
    for i in 1..=5u32 {
        for j in 1..=5u32 {
            for k in 1..=4u32 {
                p += &NcPoly::monomial(
                    Host::NSymm,
                    Word(vec![Letter::z(i), Letter::z(j), Letter::z(k)]),
                    int((seed + i * 7 + j * 3 + k) as i64 - 9),
                );
            }
        }
    }
    p
}

fn bench_poly_mul(c: &mut Criterion) {
    let a = big_poly(1);
    let b2 = &big_poly(2) * &big_poly(3);
    let mut group = c.benchmark_group("poly_mul_100x10k");
    group.sample_size(10);
    group.bench_function("seq", |bch| {
        bch.iter(|| with_mode(false, || black_box(&a * &b2)))
    });
    #[cfg(feature = "parallel")]
    group.bench_function("par", |bch| {
        bch.iter(|| with_mode(true, || black_box(&a * &b2)))
    });
    group.finish();
}

fn bench_verify_suite(c: &mut Criterion) {
    let cfg = RunConfig { max_weight: 5, truncation: 2, seed: 1 };
    let mut group = c.benchmark_group("verify_primitives_w5");
    group.sample_size(10);
    group.bench_function("seq", |b| {
        b.iter(|| with_mode(false, || black_box(run_suite("primitives", &cfg).unwrap())))
    });
    #[cfg(feature = "parallel")]
    group.bench_function("par", |b| {
        b.iter(|| with_mode(true, || black_box(run_suite("primitives", &cfg).unwrap())))
    });
    group.finish();
}

criterion_group!(benches, bench_l_table, bench_poly_mul, bench_verify_suite);
criterion_main!(benches);
