//! Frobenius closure and tight closure decisions for homogeneous primary
//! ideals of a cubic cone.
//!
//! Frobenius closure uses the uniform test exponent `n - 1` for ideals with
//! `n` generators. Tight closure uses the test ideal `(x, y, z)` together with
//! the test ideal exponent: the smallest `e` with `p^e > 7(n - 1)`.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::curve::HomIdeal;
use crate::error::{Error, Result};
use crate::field::FpMatrix;
use crate::poly::{Homogeneity, Monomial, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QueryKind {
    FrobeniusMember,
    FrobeniusClosure,
    TightMember,
    Oracle,
}

/// The rule that fixed the exponent a query was decided at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Bound {
    /// Uniform Frobenius test exponent `n - 1`.
    FrobeniusTestExponent { exponent: u32 },
    /// Smallest `e` with `p^e > threshold = 7(n - 1)`.
    TestIdealExponent { exponent: u32, q: u64, threshold: u64 },
    /// Exhaustive search over `e = 0..=e_max`.
    OracleCap { e_max: u32 },
}

/// The test element and exponent at which a tight closure check failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub multiplier: char,
    pub exponent: u32,
    pub q: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub kind: QueryKind,
    pub verdict: bool,
    /// The exponent the verdict is certified at (for oracle queries: the
    /// minimal exponent found, if any).
    pub exponent: Option<u32>,
    pub q: Option<u64>,
    /// Number of generators `n` of the ideal.
    pub generators: usize,
    pub bound: Bound,
    pub witness: Option<Witness>,
    /// Generators adjoined by a full closure computation.
    pub added_generators: Vec<Poly>,
    #[serde(rename = "elapsed_ms", serialize_with = "millis")]
    pub elapsed: Duration,
}

fn millis<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1e3)
}

fn check_element(f: &Poly, ideal: &HomIdeal) -> Result<()> {
    let p = ideal.ring().characteristic();
    if f.modulus() != p {
        return Err(Error::ModulusMismatch {
            left: p,
            right: f.modulus(),
        });
    }
    if f.homogeneity() == Homogeneity::Mixed {
        return Err(Error::NotHomogeneous(f.to_string()));
    }
    Ok(())
}

fn q_of(p: u32, e: u32) -> Result<u64> {
    (p as u64)
        .checked_pow(e)
        .ok_or_else(|| Error::Overflow(format!("{p}^{e}")))
}

/// Whether `f^(p^e)` lies in `I^[p^e]`.
pub fn frobenius_member_at(f: &Poly, ideal: &HomIdeal, e: u32) -> Result<bool> {
    check_element(f, ideal)?;
    let cap = ideal.ring().limits().degree_cap;
    let fq = f.frobenius_pow(e, cap)?;
    let limit = fq.total_degree().unwrap_or(0);
    Ok(ideal.frobenius_power_basis(e, limit)?.member(&fq))
}

/// Smallest `e <= e_max` with `f^(p^e)` in `I^[p^e]`, found by trying every
/// exponent in turn. Accepts non-primary ideals.
pub fn min_frobenius_exponent(f: &Poly, ideal: &HomIdeal, e_max: u32) -> Result<Option<u32>> {
    Ok(min_frobenius_exponents(std::slice::from_ref(f), ideal, e_max)?[0])
}

/// [`min_frobenius_exponent`] for several elements, computing each Frobenius
/// power of the ideal once.
pub fn min_frobenius_exponents(
    elements: &[Poly],
    ideal: &HomIdeal,
    e_max: u32,
) -> Result<Vec<Option<u32>>> {
    for f in elements {
        check_element(f, ideal)?;
    }
    let cap = ideal.ring().limits().degree_cap;
    let mut found: Vec<Option<u32>> = vec![None; elements.len()];
    for e in 0..=e_max {
        let open: Vec<usize> = (0..elements.len()).filter(|&i| found[i].is_none()).collect();
        let Some(top) = open.iter().map(|&i| elements[i].total_degree().unwrap_or(0)).max() else {
            break;
        };
        let q = q_of(ideal.ring().characteristic(), e)?;
        let power = ideal.frobenius_power_basis(e, top.saturating_mul(q))?;
        for i in open {
            if power.member(&elements[i].frobenius_pow(e, cap)?) {
                found[i] = Some(e);
            }
        }
    }
    Ok(found)
}

/// Oracle query wrapped in a report.
pub fn oracle_report(f: &Poly, ideal: &HomIdeal, e_max: u32) -> Result<ClosureReport> {
    let start = Instant::now();
    let exponent = min_frobenius_exponent(f, ideal, e_max)?;
    let p = ideal.ring().characteristic();
    Ok(ClosureReport {
        kind: QueryKind::Oracle,
        verdict: exponent.is_some(),
        exponent,
        q: exponent.map(|e| q_of(p, e)).transpose()?,
        generators: ideal.len(),
        bound: Bound::OracleCap { e_max },
        witness: None,
        added_generators: Vec::new(),
        elapsed: start.elapsed(),
    })
}

/// The uniform Frobenius test exponent `n - 1` for a primary ideal.
pub fn frobenius_test_exponent(ideal: &HomIdeal) -> Result<u32> {
    ideal.require_primary()?;
    // A primary ideal of a two-dimensional ring needs at least two generators.
    let n = ideal.len();
    if n < 2 && !ideal.lift_basis().is_unit_ideal() {
        return Err(Error::Internal(format!("primary ideal with {n} generators")));
    }
    Ok(n.saturating_sub(1) as u32)
}

/// Decides `f ∈ I^F` with a single membership check at `e = n - 1`.
pub fn in_frobenius_closure(f: &Poly, ideal: &HomIdeal) -> Result<ClosureReport> {
    let start = Instant::now();
    let b = frobenius_test_exponent(ideal)?;
    let verdict = frobenius_member_at(f, ideal, b)?;
    Ok(ClosureReport {
        kind: QueryKind::FrobeniusMember,
        verdict,
        exponent: Some(b),
        q: Some(q_of(ideal.ring().characteristic(), b)?),
        generators: ideal.len(),
        bound: Bound::FrobeniusTestExponent { exponent: b },
        witness: None,
        added_generators: Vec::new(),
        elapsed: start.elapsed(),
    })
}

/// Computes `I^F`.
pub fn frobenius_closure(ideal: &HomIdeal) -> Result<HomIdeal> {
    Ok(frobenius_closure_report(ideal)?.0)
}

/// Computes `I^F` degree by degree.
///
/// In each degree `d` the map `f ↦ f^q mod I^[q]` from `(R/I)_d` to
/// `(R/I^[q])_{qd}` is F_p-linear (`(f+g)^q = f^q + g^q` and `λ^q = λ`), and
/// its kernel is `(I^F)_d / I_d`. Kernel vectors are lifted through the
/// standard monomial basis and adjoined to the generators of `I`.
pub fn frobenius_closure_report(ideal: &HomIdeal) -> Result<(HomIdeal, ClosureReport)> {
    let start = Instant::now();
    let b = frobenius_test_exponent(ideal)?;
    let ring = ideal.ring();
    let p = ring.characteristic();
    let cap = ring.limits().degree_cap;
    let top = ideal.socle_degree_bound()?;
    let q = q_of(p, b)?;
    let power = ideal.frobenius_power_basis(b, top.unwrap_or(0) as u64 * q)?;

    let per_degree: Vec<Result<Vec<Poly>>> = (0..=top.unwrap_or(0))
        .into_par_iter()
        .map(|d| {
            if top.is_none() {
                return Ok(Vec::new());
            }
            let source = ideal.standard_monomials(d);
            let images = source
                .iter()
                .map(|m| Ok(power.normal_form(&Poly::monomial(*m, p).frobenius_pow(b, cap)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok(kernel_lifts(&source, &images, p))
        })
        .collect();

    let mut added = Vec::new();
    for lifts in per_degree {
        added.extend(lifts?);
    }
    let mut gens = ideal.generators().to_vec();
    gens.extend(added.iter().cloned());
    let closure = ring.ideal(gens)?;
    let report = ClosureReport {
        kind: QueryKind::FrobeniusClosure,
        verdict: !added.is_empty(),
        exponent: Some(b),
        q: Some(q),
        generators: ideal.len(),
        bound: Bound::FrobeniusTestExponent { exponent: b },
        witness: None,
        added_generators: added,
        elapsed: start.elapsed(),
    };
    Ok((closure, report))
}

/// Lifts the kernel of `source[i] ↦ images[i]` back to polynomials.
fn kernel_lifts(source: &[Monomial], images: &[Poly], p: u32) -> Vec<Poly> {
    if source.is_empty() {
        return Vec::new();
    }
    let mut rows: BTreeMap<Monomial, usize> = BTreeMap::new();
    for img in images {
        for m in img.monomials() {
            let next = rows.len();
            rows.entry(m).or_insert(next);
        }
    }
    let mut matrix = FpMatrix::zeros(rows.len(), source.len(), p);
    for (col, img) in images.iter().enumerate() {
        for (m, c) in img.terms() {
            matrix.set(rows[&m], col, c.value());
        }
    }
    matrix
        .kernel_basis()
        .into_iter()
        .map(|v| {
            Poly::from_terms(
                source.iter().zip(v).map(|(m, c)| (*m, c as i64)),
                p,
            )
        })
        .collect()
}

/// Smallest `e` with `p^e > 7(n - 1)`, together with `q = p^e`.
pub fn tight_closure_exponent(p: u32, n: usize) -> (u32, u64) {
    let threshold = 7 * n.saturating_sub(1) as u64;
    let mut e = 0;
    let mut q = 1u64;
    while q <= threshold {
        e += 1;
        q *= p as u64;
    }
    (e, q)
}

/// Decides `f ∈ I*` for a primary ideal: `f` is in the tight closure iff
/// `w f^(p^e) ∈ I^[p^e]` for `w ∈ {x, y, z}` and every `e` up to the test
/// ideal exponent.
pub fn in_tight_closure_cubic(f: &Poly, ideal: &HomIdeal) -> Result<ClosureReport> {
    let start = Instant::now();
    check_element(f, ideal)?;
    ideal.require_primary()?;
    let ring = ideal.ring();
    let p = ring.characteristic();
    let cap = ring.limits().degree_cap;
    let n = ideal.len();
    let threshold = 7 * n.saturating_sub(1) as u64;
    let (e_top, q_top) = tight_closure_exponent(p, n);

    let needed = f
        .total_degree()
        .unwrap_or(0)
        .saturating_mul(q_top)
        .saturating_add(1);
    if needed > cap {
        return Err(Error::DegreeCap {
            required: needed,
            cap,
            hint: Some(format!(
                "tight closure test needs q = {p}^{e_top} = {q_top} > 7(n-1) = {threshold}"
            )),
        });
    }

    let mut witness = None;
    'exponents: for e in 0..=e_top {
        let fq = f.frobenius_pow(e, cap)?;
        let power = ideal.frobenius_power_basis(e, fq.total_degree().unwrap_or(0) + 1)?;
        for (index, name) in ['x', 'y', 'z'].into_iter().enumerate() {
            if !power.member(&fq.mul_monomial(Monomial::var(index))) {
                witness = Some(Witness {
                    multiplier: name,
                    exponent: e,
                    q: q_of(p, e)?,
                });
                break 'exponents;
            }
        }
    }

    Ok(ClosureReport {
        kind: QueryKind::TightMember,
        verdict: witness.is_none(),
        exponent: Some(e_top),
        q: Some(q_top),
        generators: n,
        bound: Bound::TestIdealExponent {
            exponent: e_top,
            q: q_top,
            threshold,
        },
        witness,
        added_generators: Vec::new(),
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CubicCone;
    use crate::poly::parse;

    fn fermat(p: u32) -> CubicCone {
        CubicCone::new(parse("x^3+y^3+z^3", p).unwrap()).unwrap()
    }

    fn el(s: &str, p: u32) -> Poly {
        parse(s, p).unwrap()
    }

    #[test]
    fn member_at_examples() {
        let ring = fermat(2);
        let i = ring.ideal_from_strs(&["x", "y"]).unwrap();
        assert!(frobenius_member_at(&el("z^2", 2), &i, 1).unwrap());
        assert!(!frobenius_member_at(&el("z^2", 2), &i, 0).unwrap());
        assert!(frobenius_member_at(&el("x", 2), &i, 0).unwrap());
        assert!(matches!(
            frobenius_member_at(&el("x + z^2", 2), &i, 0),
            Err(Error::NotHomogeneous(_))
        ));
    }

    #[test]
    fn oracle_examples() {
        let i2 = fermat(2).ideal_from_strs(&["x", "y"]).unwrap();
        assert_eq!(min_frobenius_exponent(&el("z^2", 2), &i2, 4).unwrap(), Some(1));
        assert_eq!(min_frobenius_exponent(&el("x", 2), &i2, 4).unwrap(), Some(0));
        let i7 = fermat(7).ideal_from_strs(&["x", "y"]).unwrap();
        assert_eq!(min_frobenius_exponent(&el("x", 7), &i7, 0).unwrap(), Some(0));
        assert_eq!(min_frobenius_exponent(&el("z^2", 7), &i7, 3).unwrap(), None);
    }

    #[test]
    fn oracle_accepts_non_primary_ideals() {
        let i = fermat(2).ideal_from_strs(&["x"]).unwrap();
        assert!(!i.is_primary());
        assert_eq!(min_frobenius_exponent(&el("xy", 2), &i, 2).unwrap(), Some(0));
        assert_eq!(min_frobenius_exponent(&el("y", 2), &i, 2).unwrap(), None);
        assert_eq!(in_frobenius_closure(&el("y", 2), &i).unwrap_err(), Error::NotPrimary);
        assert_eq!(frobenius_closure(&i).unwrap_err(), Error::NotPrimary);
        assert_eq!(in_tight_closure_cubic(&el("y", 2), &i).unwrap_err(), Error::NotPrimary);
    }

    #[test]
    fn membership_in_frobenius_closure() {
        let i2 = fermat(2).ideal_from_strs(&["x", "y"]).unwrap();
        let r = in_frobenius_closure(&el("z^2", 2), &i2).unwrap();
        assert!(r.verdict);
        assert_eq!((r.exponent, r.q, r.generators), (Some(1), Some(2), 2));
        assert!(!in_frobenius_closure(&el("z", 2), &i2).unwrap().verdict);
        let i7 = fermat(7).ideal_from_strs(&["x", "y"]).unwrap();
        assert!(!in_frobenius_closure(&el("z^2", 7), &i7).unwrap().verdict);
    }

    #[test]
    fn closure_examples() {
        let ring = fermat(2);
        let i = ring.ideal_from_strs(&["x", "y"]).unwrap();
        let (closure, report) = frobenius_closure_report(&i).unwrap();
        assert!(closure.same_ideal(&ring.ideal_from_strs(&["x", "y", "z^2"]).unwrap()));
        assert_eq!(report.added_generators, vec![el("z^2", 2)]);

        let ring7 = fermat(7);
        let i7 = ring7.ideal_from_strs(&["x", "y"]).unwrap();
        assert!(frobenius_closure(&i7).unwrap().same_ideal(&i7));

        let m = ring.ideal_from_strs(&["x", "y", "z"]).unwrap();
        assert!(frobenius_closure(&m).unwrap().same_ideal(&m));
    }

    #[test]
    fn tight_exponent_choice() {
        assert_eq!(tight_closure_exponent(2, 2), (3, 8));
        assert_eq!(tight_closure_exponent(2, 3), (4, 16));
        assert_eq!(tight_closure_exponent(5, 3), (2, 25));
        assert_eq!(tight_closure_exponent(7, 2), (2, 49));
        assert_eq!(tight_closure_exponent(11, 2), (1, 11));
        assert_eq!(tight_closure_exponent(3, 1), (0, 1));
    }

    #[test]
    fn tight_closure_examples() {
        let i2 = fermat(2).ideal_from_strs(&["x", "y"]).unwrap();
        let yes = in_tight_closure_cubic(&el("z^2", 2), &i2).unwrap();
        assert!(yes.verdict);
        assert_eq!(yes.q, Some(8));
        assert_eq!(yes.witness, None);
        let no = in_tight_closure_cubic(&el("z", 2), &i2).unwrap();
        assert!(!no.verdict);
        assert!(no.witness.is_some());
        for p in [2, 5, 11] {
            let i = fermat(p).ideal_from_strs(&["x", "y"]).unwrap();
            assert!(in_tight_closure_cubic(&el("z^3", p), &i).unwrap().verdict, "p = {p}");
        }
    }

    #[test]
    fn tight_closure_reports_required_q_on_cap() {
        let ring = fermat(2).with_limits(crate::curve::Limits {
            degree_cap: 10,
            ..Default::default()
        });
        let i = ring.ideal_from_strs(&["x", "y"]).unwrap();
        match in_tight_closure_cubic(&el("z^2", 2), &i) {
            Err(Error::DegreeCap { required, hint: Some(h), .. }) => {
                assert_eq!(required, 17);
                assert!(h.contains("q = 2^3 = 8"), "{h}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
