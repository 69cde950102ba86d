//! Fixtures shared by the benchmarks.

use charclose_core::sample::{random_primary_ideal, sample_rng};
use charclose_core::{CubicCone, HomIdeal, Poly};

pub fn fermat(p: u32) -> CubicCone {
    CubicCone::new(Poly::parse("x^3+y^3+z^3", p).expect("valid cubic")).expect("smooth cubic")
}

/// A reproducible primary ideal with `n` generators of degree at most
/// `max_degree`.
pub fn seeded_ideal(ring: &CubicCone, seed: u64, n: usize, max_degree: u32) -> HomIdeal {
    let mut rng = sample_rng(seed, 0);
    random_primary_ideal(ring, &mut rng, n, max_degree, 200)
        .expect("ideal construction")
        .expect("primary ideal")
}
