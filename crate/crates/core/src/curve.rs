//! The graded ring `R = F_p[x,y,z]/(G)` of a smooth plane cubic and its
//! homogeneous ideals.
//!
//! Ideals of `R` are represented by their lifts `(f_1, ..., f_n, G)` to the
//! polynomial ring; every membership question in `R` is answered there.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{self, FieldElement};
use crate::groebner::{buchberger_in, buchberger_truncated, Budget, GroebnerBasis};
use crate::poly::{Homogeneity, Monomial, Poly, DEFAULT_DEGREE_CAP};

/// Degree of a plane cubic.
pub const CURVE_DEGREE: u32 = 3;
/// Genus of a smooth plane cubic.
pub const GENUS: u32 = 1;

/// Resource limits shared by every computation on a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Bound on the total degree of Frobenius powers and Gröbner pairs.
    pub degree_cap: u64,
    /// Bound on S-pairs reduced per Gröbner basis.
    pub max_pairs: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            degree_cap: DEFAULT_DEGREE_CAP,
            max_pairs: Budget::default().max_pairs,
        }
    }
}

impl Limits {
    pub fn budget(&self) -> Budget {
        Budget {
            max_pairs: self.max_pairs,
            max_degree: self.degree_cap,
        }
    }
}

/// A validated cone `F_p[x,y,z]/(G)` over a smooth plane cubic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicCone {
    p: u32,
    cubic: Poly,
    hasse: FieldElement,
    limits: Limits,
}

impl CubicCone {
    /// Validates `cubic` with default limits; see [`validate_curve`].
    pub fn new(cubic: Poly) -> Result<Self> {
        validate_curve(&cubic)
    }

    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn cubic(&self) -> &Poly {
        &self.cubic
    }

    pub fn hasse(&self) -> FieldElement {
        self.hasse
    }

    /// Hasse invariant zero.
    pub fn is_supersingular(&self) -> bool {
        self.hasse.is_zero()
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn genus(&self) -> u32 {
        GENUS
    }

    pub fn curve_degree(&self) -> u32 {
        CURVE_DEGREE
    }

    pub fn parse(&self, expr: &str) -> Result<Poly> {
        Poly::parse(expr, self.p)
    }

    /// Builds the ideal generated by the given polynomials.
    pub fn ideal(&self, gens: Vec<Poly>) -> Result<HomIdeal> {
        make_ideal(self, gens)
    }

    /// Parses and builds an ideal in one step.
    pub fn ideal_from_strs(&self, gens: &[&str]) -> Result<HomIdeal> {
        let gens = gens.iter().map(|s| self.parse(s)).collect::<Result<Vec<_>>>()?;
        make_ideal(self, gens)
    }
}

/// Checks that `cubic` is a nonzero homogeneous cubic whose projective curve
/// is smooth, and computes its Hasse invariant.
///
/// Smoothness holds iff `(G, G_x, G_y, G_z)` has no zero other than the
/// origin, i.e. its quotient is finite-dimensional.
pub fn validate_curve(cubic: &Poly) -> Result<CubicCone> {
    let p = field::check_modulus(cubic.modulus() as u64)?;
    match cubic.homogeneity() {
        Homogeneity::Degree(3) => {}
        Homogeneity::Zero => return Err(Error::NotElliptic("the cubic is zero".into())),
        Homogeneity::Degree(d) => {
            return Err(Error::NotElliptic(format!(
                "expected a homogeneous cubic, got degree {d}"
            )))
        }
        Homogeneity::Mixed => {
            return Err(Error::NotElliptic("the cubic is not homogeneous".into()))
        }
    }
    let jacobian = [
        cubic.clone(),
        cubic.derivative(0),
        cubic.derivative(1),
        cubic.derivative(2),
    ];
    let limits = Limits::default();
    let basis = buchberger_in(&jacobian, p, &limits.budget())?;
    if !basis.is_irrelevant_primary() {
        return Err(Error::NotElliptic(format!(
            "{cubic} defines a singular curve over F_{p} (Jacobian criterion fails)"
        )));
    }
    Ok(CubicCone {
        p,
        cubic: cubic.clone(),
        hasse: hasse_invariant(cubic),
        limits,
    })
}

/// Coefficient of `(xyz)^(p-1)` in `G^(p-1)`.
///
/// Expanded by repeated multiplication by `G`, discarding intermediate terms
/// that can no longer reach the target exponent pattern.
pub fn hasse_invariant(cubic: &Poly) -> FieldElement {
    let p = cubic.modulus();
    let target = p - 1;
    let mut acc: BTreeMap<Monomial, u32> = BTreeMap::from([(Monomial::ONE, 1 % p)]);
    for step in 1..=target {
        let remaining = (target - step) as u64;
        let mut next: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (m, c) in &acc {
            for (t, a) in cubic.raw_terms() {
                let prod = *m * *t;
                let e = prod.exponents();
                // Each remaining factor raises a single exponent by at most 3.
                let reachable = e.iter().all(|&k| {
                    k <= target && (k as u64) + 3 * remaining >= target as u64
                });
                if !reachable {
                    continue;
                }
                let slot = next.entry(prod).or_insert(0);
                *slot = field::add_mod(*slot, field::mul_mod(*c, *a, p), p);
            }
        }
        next.retain(|_, c| *c != 0);
        acc = next;
    }
    let coeff = acc
        .get(&Monomial::new(target, target, target))
        .copied()
        .unwrap_or(0);
    FieldElement::new(coeff as u64, p)
}

/// A homogeneous ideal `(f_1, ..., f_n)` of `R`.
#[derive(Clone, Debug)]
pub struct HomIdeal {
    ring: CubicCone,
    gens: Vec<Poly>,
    lift: GroebnerBasis,
    primary: bool,
}

/// Builds the ideal of `ring` generated by `gens` and computes the reduced
/// Gröbner basis of its lift `(gens, G)`.
pub fn make_ideal(ring: &CubicCone, gens: Vec<Poly>) -> Result<HomIdeal> {
    for g in &gens {
        if g.modulus() != ring.p {
            return Err(Error::ModulusMismatch {
                left: ring.p,
                right: g.modulus(),
            });
        }
        match g.homogeneity() {
            Homogeneity::Zero => return Err(Error::ZeroGenerator),
            Homogeneity::Mixed => return Err(Error::NotHomogeneous(g.to_string())),
            Homogeneity::Degree(_) => {}
        }
    }
    let mut lifted = gens.clone();
    lifted.push(ring.cubic.clone());
    let lift = buchberger_in(&lifted, ring.p, &ring.limits.budget())?;
    let primary = lift.is_irrelevant_primary();
    Ok(HomIdeal {
        ring: ring.clone(),
        gens,
        lift,
        primary,
    })
}

impl HomIdeal {
    pub fn ring(&self) -> &CubicCone {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    /// Number of generators `n`, as given.
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Degrees `d_i` of the generators.
    pub fn degrees(&self) -> Vec<u64> {
        self.gens
            .iter()
            .map(|g| g.homogeneous_degree().expect("generators are homogeneous"))
            .collect()
    }

    /// Reduced Gröbner basis of `(f_1, ..., f_n, G)`.
    pub fn lift_basis(&self) -> &GroebnerBasis {
        &self.lift
    }

    /// Whether `R/I` is finite-dimensional.
    pub fn is_primary(&self) -> bool {
        self.primary
    }

    pub(crate) fn require_primary(&self) -> Result<()> {
        if self.primary {
            Ok(())
        } else {
            Err(Error::NotPrimary)
        }
    }

    /// Membership of `f` in `I`, decided on the lift.
    pub fn contains(&self, f: &Poly) -> bool {
        self.lift.member(f)
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        self.lift.normal_form(f)
    }

    /// `I^[p^e]`, generated by the `p^e`-th powers of the generators. `G`
    /// itself is adjoined once, not raised.
    pub fn frobenius_power(&self, e: u32) -> Result<HomIdeal> {
        if e == 0 {
            return Ok(self.clone());
        }
        let cap = self.ring.limits.degree_cap;
        let gens = self
            .gens
            .iter()
            .map(|g| g.frobenius_pow(e, cap))
            .collect::<Result<Vec<_>>>()?;
        make_ideal(&self.ring, gens)
    }

    /// Gröbner basis of the lift of `I^[p^e]`, complete up to degree `limit`.
    /// Enough to decide membership of homogeneous elements of degree at most
    /// `limit` without computing the full basis.
    pub fn frobenius_power_basis(&self, e: u32, limit: u64) -> Result<GroebnerBasis> {
        let cap = self.ring.limits.degree_cap;
        let mut gens = self
            .gens
            .iter()
            .map(|g| g.frobenius_pow(e, cap))
            .collect::<Result<Vec<_>>>()?;
        gens.push(self.ring.cubic.clone());
        buchberger_truncated(&gens, self.ring.p, &self.ring.limits.budget(), limit)
    }

    /// Largest degree in which `R/I` is nonzero, or `None` when `I = R`.
    ///
    /// Scans degrees upward. Once every monomial of some degree lies in the
    /// leading ideal, so does every monomial of higher degree.
    pub fn socle_degree_bound(&self) -> Result<Option<u32>> {
        self.require_primary()?;
        if self.lift.is_unit_ideal() {
            return Ok(None);
        }
        let pure = self.lift.pure_power_degrees();
        let limit: u32 = pure.iter().map(|k| k.expect("primary")).sum();
        let mut last = 0;
        for d in 0..=limit {
            if self.lift.standard_monomials(d).is_empty() {
                return Ok(Some(last));
            }
            last = d;
        }
        Err(Error::Internal(format!(
            "standard monomials persist beyond degree {limit}"
        )))
    }

    /// Standard monomials of `R/I` in degree `d`.
    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        self.lift.standard_monomials(d)
    }

    /// Same ideal: equal reduced lifted bases.
    pub fn same_ideal(&self, other: &HomIdeal) -> bool {
        self.lift == other.lift
    }

    /// Drops generators that lie in the ideal generated by the others.
    pub fn minimalize(&self) -> Result<HomIdeal> {
        let mut gens = self.gens.clone();
        let mut i = 0;
        while i < gens.len() {
            let mut others: Vec<Poly> = gens
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, g)| g.clone())
                .collect();
            others.push(self.ring.cubic.clone());
            let basis = buchberger_in(&others, self.ring.p, &self.ring.limits.budget())?;
            if basis.member(&gens[i]) {
                gens.remove(i);
            } else {
                i += 1;
            }
        }
        make_ideal(&self.ring, gens)
    }
}
