use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use charclose_bench::{fermat, seeded_ideal};
use charclose_core::closure::{frobenius_closure, in_tight_closure_cubic, min_frobenius_exponents};
use charclose_core::curve::hasse_invariant;
use charclose_core::groebner::buchberger_in;
use charclose_core::{Budget, Poly};

fn groebner(c: &mut Criterion) {
    let ring = fermat(5);
    for e in [1u32, 2] {
        let gens: Vec<Poly> = ["x^2+x*y", "y^2+4*z^2"]
            .iter()
            .map(|s| ring.parse(s).unwrap().frobenius_pow(e, u64::MAX).unwrap())
            .chain([ring.cubic().clone()])
            .collect();
        let q = 5u64.pow(e);
        c.bench_function(&format!("buchberger (x^2+xy, y^2+4z^2)^[{q}] + G"), |b| {
            b.iter(|| buchberger_in(black_box(&gens), 5, &Budget::default()).unwrap())
        });
    }
}

fn closures(c: &mut Criterion) {
    let f2 = fermat(2);
    let xy = f2.ideal_from_strs(&["x", "y"]).unwrap();
    c.bench_function("frobenius closure (x,y) over F_2", |b| {
        b.iter(|| frobenius_closure(black_box(&xy)).unwrap())
    });
    let z2 = f2.parse("z^2").unwrap();
    c.bench_function("tight closure z^2 in (x,y) over F_2", |b| {
        b.iter(|| in_tight_closure_cubic(black_box(&z2), &xy).unwrap())
    });

    let f5 = fermat(5);
    let ideal = seeded_ideal(&f5, 1, 2, 2);
    let top = ideal.socle_degree_bound().unwrap().unwrap_or(0);
    let elements: Vec<Poly> = (0..=top)
        .flat_map(|d| ideal.standard_monomials(d))
        .map(|m| Poly::monomial(m, 5))
        .collect();
    c.bench_function("oracle e_max = 3, two quadrics over F_5", |b| {
        b.iter(|| min_frobenius_exponents(black_box(&elements), &ideal, 3).unwrap())
    });
}

fn hasse(c: &mut Criterion) {
    let cubic = Poly::parse("x^3+y^3+z^3+x*y*z", 101).unwrap();
    c.bench_function("hasse invariant p = 101", |b| {
        b.iter(|| hasse_invariant(black_box(&cubic)))
    });
}

criterion_group!(benches, groebner, closures, hasse);
criterion_main!(benches);
