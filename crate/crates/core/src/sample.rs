//! Seeded random homogeneous forms and primary ideals.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::curve::{CubicCone, HomIdeal};
use crate::error::Result;
use crate::poly::{Monomial, Poly};

/// Deterministic generator for sample `index` of a run seeded with `seed`.
/// Each index gets its own stream so samples can be drawn in any order.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A nonzero form of the given degree. Each monomial is present with
/// probability one half, with a uniform nonzero coefficient.
pub fn random_form<R: Rng + ?Sized>(rng: &mut R, p: u32, degree: u32) -> Poly {
    let monomials = Monomial::all_of_degree(degree);
    loop {
        let mut terms = Vec::new();
        for &m in &monomials {
            if rng.gen_bool(0.5) {
                terms.push((m, rng.gen_range(1..p) as i64));
            }
        }
        let f = Poly::from_terms(terms, p);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Draws `n` random forms of degree `1..=max_degree` until the ideal they
/// generate is primary, giving up after `attempts` tries.
pub fn random_primary_ideal<R: Rng + ?Sized>(
    ring: &CubicCone,
    rng: &mut R,
    n: usize,
    max_degree: u32,
    attempts: usize,
) -> Result<Option<HomIdeal>> {
    let p = ring.characteristic();
    for _ in 0..attempts {
        let gens: Vec<Poly> = (0..n)
            .map(|_| {
                let d = rng.gen_range(1..=max_degree.max(1));
                random_form(rng, p, d)
            })
            .collect();
        let ideal = ring.ideal(gens)?;
        if ideal.is_primary() && !ideal.lift_basis().is_unit_ideal() {
            return Ok(Some(ideal));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    #[test]
    fn sampling_is_reproducible() {
        let ring = CubicCone::new(parse("x^3+y^3+z^3", 5).unwrap()).unwrap();
        let draw = |seed, index| {
            let mut rng = sample_rng(seed, index);
            random_primary_ideal(&ring, &mut rng, 2, 2, 50)
                .unwrap()
                .unwrap()
                .generators()
                .to_vec()
        };
        assert_eq!(draw(7, 3), draw(7, 3));
        assert_ne!(draw(7, 3), draw(7, 4));
    }

    #[test]
    fn forms_are_homogeneous() {
        let mut rng = sample_rng(1, 0);
        for d in 1..5 {
            let f = random_form(&mut rng, 3, d);
            assert_eq!(f.homogeneous_degree(), Some(d as u64));
        }
    }
}
