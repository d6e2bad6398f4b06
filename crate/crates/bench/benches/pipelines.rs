use chainext_bench::{fuzz_instance, obstructed_abelian3, so3_constraints};
use chainext_core::brst::build_brst;
use chainext_core::complexes::{chain_extend, verify_nilpotent};
use chainext_core::fuzz::run_fuzz;
use chainext_core::shlie::{build_shlie, verify_shlie, Variant};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn extension(c: &mut Criterion) {
    let inst = fuzz_instance(10);
    c.bench_function("chain_extend + verify (fuzz seed 10)", |b| {
        b.iter(|| verify_nilpotent(&chain_extend(black_box(&inst.homotopy), &inst.l2_0).unwrap()))
    });
    c.bench_function("run_fuzz 10 instances", |b| b.iter(|| run_fuzz(black_box(1), 10)));
}

fn shlie(c: &mut Criterion) {
    let (a, alpha) = obstructed_abelian3();
    let s = build_shlie(&a, &alpha, 4, Variant::TruncatedT2).unwrap();
    c.bench_function("verify_shlie abelian3 N=4", |b| b.iter(|| verify_shlie(black_box(&s))));
}

fn brst(c: &mut Criterion) {
    let sys = so3_constraints();
    c.bench_function("build_brst so3 cap 4", |b| b.iter(|| build_brst(black_box(&sys), 4).unwrap()));
}

criterion_group!(benches, extension, shlie, brst);
criterion_main!(benches);
