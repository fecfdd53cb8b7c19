//! Timings for the kernels the enumeration suites lean on.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use invsemi_core::families::for_each_semigroup;
use invsemi_core::inverse_poly::DegreeCounter;
use invsemi_core::{
    annihilator_of_semigroup_j, inverse_polynomial, minimal_generators, verify_4gor,
    ExponentVector, IntersectionMode, IntersectionVerifier, NumericalSemigroup,
};

fn semigroup(gens: &[i64]) -> NumericalSemigroup {
    NumericalSemigroup::new(gens).expect("valid generators")
}

fn construction(c: &mut Criterion) {
    c.bench_function("new <41,99,70,53>", |b| {
        b.iter(|| semigroup(black_box(&[41, 99, 70, 53])))
    });
    c.bench_function("enumerate m<=8 Fr<=30", |b| {
        b.iter(|| {
            let mut n = 0usize;
            for_each_semigroup(8, 30, |_| n += 1).unwrap();
            n
        })
    });
}

fn inverse_polynomials(c: &mut Criterion) {
    let h = semigroup(&[41, 99, 70, 53]);
    c.bench_function("J at Fr+n_1 <41,99,70,53>", |b| {
        b.iter(|| inverse_polynomial(&h, black_box(1060)).unwrap())
    });
    let h = semigroup(&[11, 13, 17]);
    c.bench_function("Ann(J_143) <11,13,17>", |b| {
        b.iter(|| annihilator_of_semigroup_j(&h, black_box(143)).unwrap())
    });
    let counter = DegreeCounter::new(&h);
    c.bench_function("degree-set colength <11,13,17> m=143", |b| {
        b.iter(|| counter.colength(black_box(143)))
    });
}

fn ideals(c: &mut Criterion) {
    let h = semigroup(&[8, 9, 10, 14, 15]);
    c.bench_function("minimal generators <8,9,10,14,15>", |b| {
        b.iter(|| minimal_generators(black_box(&h)).unwrap())
    });
    let h = semigroup(&[43, 20, 27, 37]);
    c.bench_function("verify_4gor <43,20,27,37>", |b| {
        b.iter(|| verify_4gor(black_box(&h)).unwrap())
    });
    let h = semigroup(&[10, 11, 13, 17]);
    let a = ExponentVector::unit(4, 0);
    for mode in [
        IntersectionMode::Degrees,
        IntersectionMode::Polynomials,
        IntersectionMode::Elimination,
    ] {
        c.bench_function(&format!("intersection x_1 <10,11,13,17> {mode:?}"), |b| {
            b.iter(|| {
                IntersectionVerifier::new(&h)
                    .unwrap()
                    .verify(&a, mode)
                    .unwrap()
            })
        });
    }
}

criterion_group!(benches, construction, inverse_polynomials, ideals);
criterion_main!(benches);
