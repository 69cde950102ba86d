//! Empirical distribution of minimal Frobenius exponents over random primary
//! ideals.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::closure::min_frobenius_exponents;
use crate::curve::CubicCone;
use crate::poly::{Monomial, Poly};
use crate::sample::{random_primary_ideal, sample_rng};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub samples: usize,
    pub min_generators: usize,
    pub max_generators: usize,
    /// Generators have degree in `1..=max_degree`.
    pub max_degree: u32,
    pub seed: u64,
    /// Oracle cap; `None` means `n + 1` for ideals with `n` generators.
    pub e_max: Option<u32>,
    /// Draws per sample before giving up on finding a primary ideal.
    pub attempts: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            samples: 10,
            min_generators: 2,
            max_generators: 3,
            max_degree: 2,
            seed: 0,
            e_max: None,
            attempts: 100,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ElementExponent {
    pub element: Monomial,
    pub exponent: Option<u32>,
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleOutcome {
    pub index: usize,
    pub generators: Vec<Poly>,
    pub e_max: u32,
    pub exponents: Vec<ElementExponent>,
    /// Set when the sample could not be drawn or ran out of resources.
    pub error: Option<String>,
}

/// Histogram of minimal exponents for ideals with a fixed generator count.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HistogramRow {
    pub samples: usize,
    pub elements: usize,
    /// Minimal exponent -> number of elements.
    pub exponents: BTreeMap<u32, usize>,
    /// Elements with no exponent up to `e_max`.
    pub not_found: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchTable {
    pub seed: u64,
    /// Keyed by generator count `n`.
    pub rows: BTreeMap<usize, HistogramRow>,
    pub samples: Vec<SampleOutcome>,
    /// Finite exponents above `n - 1`; always empty unless the uniform bound
    /// is violated.
    pub violations: Vec<String>,
}

fn run_sample(ring: &CubicCone, config: &SearchConfig, index: usize) -> (usize, SampleOutcome) {
    let mut rng = sample_rng(config.seed, index as u64);
    let lo = config.min_generators.max(2);
    let hi = config.max_generators.max(lo);
    let n = rng.gen_range(lo..=hi);
    let e_max = config.e_max.unwrap_or(n as u32 + 1);
    let mut outcome = SampleOutcome {
        index,
        generators: Vec::new(),
        e_max,
        exponents: Vec::new(),
        error: None,
    };
    let result = (|| {
        let ideal = random_primary_ideal(ring, &mut rng, n, config.max_degree, config.attempts)?
            .ok_or_else(|| crate::Error::Internal("no primary ideal drawn".into()))?;
        outcome.generators = ideal.generators().to_vec();
        let top = ideal.socle_degree_bound()?.unwrap_or(0);
        let elements: Vec<Monomial> = (0..=top).flat_map(|d| ideal.standard_monomials(d)).collect();
        let polys: Vec<Poly> = elements
            .iter()
            .map(|&m| Poly::monomial(m, ring.characteristic()))
            .collect();
        let found = min_frobenius_exponents(&polys, &ideal, e_max)?;
        outcome.exponents = elements
            .into_iter()
            .zip(found)
            .map(|(element, exponent)| ElementExponent { element, exponent })
            .collect();
        Ok::<_, crate::Error>(())
    })();
    if let Err(e) = result {
        outcome.error = Some(e.to_string());
    }
    (n, outcome)
}

/// Samples primary ideals, records the minimal Frobenius exponent of every
/// standard monomial of each quotient, and aggregates by generator count.
pub fn search_min_exponents(ring: &CubicCone, config: &SearchConfig) -> SearchTable {
    let outcomes: Vec<(usize, SampleOutcome)> = (0..config.samples)
        .into_par_iter()
        .map(|i| run_sample(ring, config, i))
        .collect();

    let mut rows: BTreeMap<usize, HistogramRow> = BTreeMap::new();
    let mut violations = Vec::new();
    let mut samples = Vec::with_capacity(outcomes.len());
    for (n, outcome) in outcomes {
        let row = rows.entry(n).or_default();
        row.samples += 1;
        if outcome.error.is_some() {
            row.failures += 1;
        }
        for ElementExponent { element, exponent } in &outcome.exponents {
            row.elements += 1;
            match exponent {
                Some(e) => {
                    *row.exponents.entry(*e).or_default() += 1;
                    if *e as usize > n - 1 {
                        violations.push(format!(
                            "sample {}: {element} needs e = {e} > n - 1 = {}",
                            outcome.index,
                            n - 1
                        ));
                    }
                }
                None => row.not_found += 1,
            }
        }
        samples.push(outcome);
    }
    SearchTable {
        seed: config.seed,
        rows,
        samples,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn fermat(p: u32) -> CubicCone {
        CubicCone::new(parse("x^3+y^3+z^3", p).unwrap()).unwrap()
    }

    #[test]
    fn two_generator_exponents_over_f2() {
        let config = SearchConfig {
            samples: 6,
            min_generators: 2,
            max_generators: 2,
            seed: 11,
            ..Default::default()
        };
        let table = search_min_exponents(&fermat(2), &config);
        assert!(table.violations.is_empty(), "{:?}", table.violations);
        let row = &table.rows[&2];
        assert_eq!(row.samples, 6);
        assert_eq!(row.failures, 0);
        assert!(row.exponents.keys().all(|&e| e <= 1));
    }

    #[test]
    fn ordinary_curve_has_no_positive_exponents() {
        let config = SearchConfig {
            samples: 3,
            max_generators: 2,
            max_degree: 1,
            seed: 5,
            ..Default::default()
        };
        let table = search_min_exponents(&fermat(7), &config);
        for row in table.rows.values() {
            assert!(row.exponents.keys().all(|&e| e == 0));
        }
    }

    #[test]
    fn empty_budget_gives_empty_table() {
        let config = SearchConfig {
            samples: 0,
            ..Default::default()
        };
        let table = search_min_exponents(&fermat(2), &config);
        assert!(table.rows.is_empty() && table.samples.is_empty());
    }

    #[test]
    fn aggregation_is_deterministic() {
        let config = SearchConfig {
            samples: 4,
            seed: 3,
            ..Default::default()
        };
        let a = search_min_exponents(&fermat(2), &config);
        let b = search_min_exponents(&fermat(2), &config);
        assert_eq!(a.rows, b.rows);
    }
}
