//! Buchberger's algorithm under graded reverse lexicographic order, with
//! normal forms, ideal membership and standard monomials.
//!
//! Pairs are selected by the normal strategy (smallest lcm degree first) and
//! pruned with the Gebauer–Möller installation of Buchberger's coprimality
//! and chain criteria.

use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use crate::error::{Error, Result};
use crate::field;
use crate::poly::{Homogeneity, Monomial, Poly, DEFAULT_DEGREE_CAP};

/// Resource limits for a Gröbner basis computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of S-pairs that may be reduced.
    pub max_pairs: usize,
    /// Maximum total degree of any S-polynomial.
    pub max_degree: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_pairs: 1_000_000,
            max_degree: DEFAULT_DEGREE_CAP,
        }
    }
}

/// Finds, for a monomial, an element whose leading monomial divides it.
///
/// Leading monomials are grouped by their `z` exponent; each group is sorted
/// by `y` exponent and carries a running minimum of the `x` exponent, so a
/// query costs one binary search per group.
#[derive(Clone, Debug, Default)]
struct DivisorIndex {
    groups: BTreeMap<u32, Group>,
}

#[derive(Clone, Debug, Default)]
struct Group {
    /// (y exponent, x exponent, element) sorted by y exponent.
    entries: Vec<(u32, u32, usize)>,
    /// Entry with the smallest x exponent among `entries[..=i]`.
    prefix_min: Vec<(u32, usize)>,
}

impl Group {
    fn rebuild(&mut self) {
        self.prefix_min.clear();
        let mut best: Option<(u32, usize)> = None;
        for &(_, a, idx) in &self.entries {
            if best.is_none_or(|(ba, _)| a < ba) {
                best = Some((a, idx));
            }
            self.prefix_min.push(best.unwrap());
        }
    }
}

impl DivisorIndex {
    fn insert(&mut self, lm: Monomial, idx: usize) {
        let [a, b, c] = lm.exponents();
        let group = self.groups.entry(c).or_default();
        let pos = group.entries.partition_point(|&(eb, _, _)| eb <= b);
        group.entries.insert(pos, (b, a, idx));
        group.rebuild();
    }

    fn remove(&mut self, lm: Monomial, idx: usize) {
        let c = lm.exponents()[2];
        if let Some(group) = self.groups.get_mut(&c) {
            group.entries.retain(|&(_, _, i)| i != idx);
            if group.entries.is_empty() {
                self.groups.remove(&c);
            } else {
                group.rebuild();
            }
        }
    }

    fn find(&self, m: &Monomial) -> Option<usize> {
        let [a, b, c] = m.exponents();
        for group in self.groups.range(..=c).map(|(_, g)| g) {
            let pos = group.entries.partition_point(|&(eb, _, _)| eb <= b);
            if pos > 0 {
                let (min_a, idx) = group.prefix_min[pos - 1];
                if min_a <= a {
                    return Some(idx);
                }
            }
        }
        None
    }
}

/// A reduced Gröbner basis: monic, inter-reduced, sorted by ascending leading
/// monomial. Equal ideals have equal bases.
///
/// A basis built by [`buchberger_truncated`] is only complete up to its
/// truncation degree and answers questions about homogeneous polynomials of
/// at most that degree.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    modulus: u32,
    generators: Vec<Poly>,
    truncation: Option<u64>,
    index: DivisorIndex,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
            && self.truncation == other.truncation
            && self.generators == other.generators
    }
}

impl Eq for GroebnerBasis {}

impl GroebnerBasis {
    fn from_reduced(modulus: u32, generators: Vec<Poly>, truncation: Option<u64>) -> Self {
        let mut index = DivisorIndex::default();
        for (i, g) in generators.iter().enumerate() {
            index.insert(g.leading_monomial().expect("nonzero"), i);
        }
        GroebnerBasis {
            modulus,
            generators,
            truncation,
            index,
        }
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Degree up to which the basis is complete; `None` for a full basis.
    pub fn truncation(&self) -> Option<u64> {
        self.truncation
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators
            .iter()
            .map(|g| g.leading_monomial().expect("basis elements are nonzero"))
            .collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators
            .iter()
            .any(|g| g.leading_monomial() == Some(Monomial::ONE))
    }

    /// Remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &Poly) -> Poly {
        assert_eq!(f.modulus(), self.modulus, "modulus mismatch");
        if let Some(limit) = self.truncation {
            debug_assert!(
                f.total_degree().unwrap_or(0) <= limit,
                "degree exceeds truncation"
            );
        }
        reduce(f, &self.generators, &self.index)
    }

    pub fn member(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    fn is_standard(&self, m: &Monomial) -> bool {
        self.index.find(m).is_none()
    }

    /// Degree-`d` monomials outside the leading ideal, in descending order.
    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        Monomial::all_of_degree(d)
            .into_iter()
            .filter(|m| self.is_standard(m))
            .collect()
    }

    /// Whether the quotient ring is finite-dimensional, i.e. every variable
    /// has a pure power among the leading monomials.
    pub fn is_irrelevant_primary(&self) -> bool {
        self.is_unit_ideal() || self.pure_power_degrees().iter().all(Option::is_some)
    }

    /// For each variable, the smallest pure power among the leading monomials.
    pub fn pure_power_degrees(&self) -> [Option<u32>; 3] {
        let mut out = [None; 3];
        for m in self.leading_monomials() {
            if let Some((v, k)) = m.pure_power() {
                out[v] = Some(out[v].map_or(k, |old: u32| old.min(k)));
            }
        }
        out
    }

    /// Checks Buchberger's criterion directly: every S-polynomial of a pair of
    /// basis elements reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let gens = &self.generators;
        (0..gens.len()).all(|i| {
            (i + 1..gens.len()).all(|j| {
                let s = s_polynomial(&gens[i], &gens[j]);
                let within = match self.truncation {
                    Some(limit) => s.total_degree().unwrap_or(0) <= limit,
                    None => true,
                };
                !within || reduce(&s, gens, &self.index).is_zero()
            })
        })
    }
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Poly], budget: &Budget) -> Result<GroebnerBasis> {
    let Some(first) = gens.first() else {
        return Err(Error::Internal(
            "buchberger needs at least one generator to fix the field".into(),
        ));
    };
    buchberger_in(gens, first.modulus(), budget)
}

/// Like [`buchberger`] but accepts an empty generator list.
pub fn buchberger_in(gens: &[Poly], p: u32, budget: &Budget) -> Result<GroebnerBasis> {
    compute(gens, p, budget, None)
}

/// Gröbner basis of a homogeneous ideal complete up to degree `limit`: every
/// homogeneous element of the ideal of degree at most `limit` has its leading
/// monomial divisible by a leading monomial of the result.
pub fn buchberger_truncated(
    gens: &[Poly],
    p: u32,
    budget: &Budget,
    limit: u64,
) -> Result<GroebnerBasis> {
    if let Some(g) = gens.iter().find(|g| g.homogeneity() == Homogeneity::Mixed) {
        return Err(Error::NotHomogeneous(g.to_string()));
    }
    compute(gens, p, budget, Some(limit))
}

fn compute(gens: &[Poly], p: u32, budget: &Budget, limit: Option<u64>) -> Result<GroebnerBasis> {
    let mut state = State::new(p);
    for g in gens {
        if g.modulus() != p {
            return Err(Error::ModulusMismatch {
                left: p,
                right: g.modulus(),
            });
        }
        if g.is_zero() || limit.is_some_and(|d| g.total_degree().unwrap_or(0) > d) {
            continue;
        }
        let r = reduce(g, &state.polys, &state.index);
        if !r.is_zero() {
            state.add(r.monic());
        }
    }
    state.run(budget, limit)?;
    Ok(state.finish(limit))
}

struct State {
    modulus: u32,
    polys: Vec<Poly>,
    lms: Vec<Monomial>,
    /// Elements currently in the basis (not superseded by a newer element
    /// whose leading monomial divides theirs).
    active: Vec<bool>,
    index: DivisorIndex,
    /// Critical pairs `(lcm degree, lcm, j, i)` with `i < j`.
    queue: BTreeSet<(u64, Monomial, usize, usize)>,
}

impl State {
    fn new(modulus: u32) -> Self {
        State {
            modulus,
            polys: Vec::new(),
            lms: Vec::new(),
            active: Vec::new(),
            index: DivisorIndex::default(),
            queue: BTreeSet::new(),
        }
    }

    /// Adds a monic element and updates the pair set (Gebauer–Möller).
    fn add(&mut self, h: Poly) {
        let lm_h = h.leading_monomial().expect("nonzero");
        let k = self.polys.len();

        // New pairs (g, h), pruned against each other.
        let candidates: Vec<(usize, Monomial)> = (0..k)
            .filter(|&g| self.active[g])
            .map(|g| (g, self.lms[g].lcm(&lm_h)))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (pos, &(g, lcm)) in candidates.iter().enumerate() {
            let coprime = self.lms[g].is_coprime(&lm_h);
            let dominated = candidates[pos + 1..]
                .iter()
                .chain(kept.iter())
                .any(|&(_, other)| other.divides(&lcm));
            if coprime || !dominated {
                kept.push((g, lcm));
            }
        }
        let new_pairs: Vec<(usize, Monomial)> = kept
            .into_iter()
            .filter(|&(g, _)| !self.lms[g].is_coprime(&lm_h))
            .collect();

        // Old pairs whose lcm is strictly divisible by LM(h) in the chain sense.
        let lms = &self.lms;
        self.queue.retain(|&(_, lcm, j, i)| {
            !(lm_h.divides(&lcm) && lms[i].lcm(&lm_h) != lcm && lms[j].lcm(&lm_h) != lcm)
        });

        for (g, lcm) in new_pairs {
            self.queue.insert((lcm.degree(), lcm, k, g));
        }
        for g in 0..k {
            if self.active[g] && lm_h.divides(&self.lms[g]) {
                self.active[g] = false;
                self.index.remove(self.lms[g], g);
            }
        }
        self.polys.push(h);
        self.lms.push(lm_h);
        self.active.push(true);
        self.index.insert(lm_h, k);
    }

    fn run(&mut self, budget: &Budget, limit: Option<u64>) -> Result<()> {
        let mut reduced_pairs = 0usize;
        while let Some((deg, _, j, i)) = self.queue.pop_first() {
            if limit.is_some_and(|d| deg > d) {
                self.queue.clear();
                break;
            }
            if deg > budget.max_degree {
                return Err(Error::Budget(format!(
                    "S-polynomial degree {deg} exceeds the limit {}",
                    budget.max_degree
                )));
            }
            reduced_pairs += 1;
            if reduced_pairs > budget.max_pairs {
                return Err(Error::Budget(format!(
                    "more than {} S-pairs reduced",
                    budget.max_pairs
                )));
            }
            let s = s_polynomial(&self.polys[i], &self.polys[j]);
            let r = reduce(&s, &self.polys, &self.index);
            if !r.is_zero() {
                self.add(r.monic());
            }
        }
        Ok(())
    }

    fn finish(self, limit: Option<u64>) -> GroebnerBasis {
        let p = self.modulus;
        // Active elements form a minimal basis: no leading monomial divides
        // another.
        let mut minimal: Vec<Poly> = self
            .polys
            .into_iter()
            .zip(self.active)
            .filter_map(|(g, a)| a.then_some(g))
            .collect();
        minimal.sort_by_key(|g| g.leading_monomial());
        let mut index = DivisorIndex::default();
        for (i, g) in minimal.iter().enumerate() {
            index.insert(g.leading_monomial().unwrap(), i);
        }
        // Tail reduction. Terms below LM(g) never become divisible by LM(g),
        // and no other leading monomial divides LM(g).
        let reduced: Vec<Poly> = minimal
            .iter()
            .map(|g| {
                let (lm, _) = g.raw_terms()[0];
                let tail = Poly::from_sorted(g.raw_terms()[1..].to_vec(), p);
                let mut terms = vec![(lm, 1)];
                terms.extend_from_slice(reduce(&tail, &minimal, &index).raw_terms());
                Poly::from_sorted(terms, p)
            })
            .collect();
        GroebnerBasis::from_reduced(p, reduced, limit)
    }
}

/// S-polynomial of two polynomials.
fn s_polynomial(f: &Poly, g: &Poly) -> Poly {
    let p = f.modulus();
    let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let lcm = lf.lcm(&lg);
    let cf = field::inv_mod(f.leading_coefficient().unwrap().value(), p).unwrap();
    let cg = field::inv_mod(g.leading_coefficient().unwrap().value(), p).unwrap();
    let a = f.mul_term(lcm.quotient(&lf).unwrap(), cf);
    let b = g.mul_term(lcm.quotient(&lg).unwrap(), cg);
    &a - &b
}

/// Full reduction of `f` by the monic `divisors` located through `index`.
/// The result has no term divisible by an indexed leading monomial.
fn reduce(f: &Poly, divisors: &[Poly], index: &DivisorIndex) -> Poly {
    let p = f.modulus();
    if f.is_zero() || divisors.is_empty() {
        return f.clone();
    }
    // Max-heap of pending terms; equal monomials are combined when popped.
    let mut heap: BinaryHeap<(Monomial, u32)> = f.raw_terms().iter().copied().collect();
    let mut remainder: Vec<(Monomial, u32)> = Vec::new();
    while let Some((m, mut c)) = heap.pop() {
        while let Some(&(next, d)) = heap.peek() {
            if next != m {
                break;
            }
            c = field::add_mod(c, d, p);
            heap.pop();
        }
        if c == 0 {
            continue;
        }
        let Some(k) = index.find(&m) else {
            remainder.push((m, c));
            continue;
        };
        let g = divisors[k].raw_terms();
        debug_assert_eq!(g[0].1, 1, "divisors are monic");
        let shift = m.quotient(&g[0].0).unwrap();
        // Subtract c * shift * g; its leading term cancels m exactly.
        let neg = field::neg_mod(c, p);
        heap.extend(g[1..].iter().map(|&(t, a)| (t * shift, field::mul_mod(a, neg, p))));
    }
    Poly::from_sorted(remainder, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;
    use proptest::prelude::*;

    fn basis(gens: &[&str], p: u32) -> GroebnerBasis {
        let gens: Vec<Poly> = gens.iter().map(|s| parse(s, p).unwrap()).collect();
        buchberger(&gens, &Budget::default()).unwrap()
    }

    fn polys(gens: &[&str], p: u32) -> Vec<Poly> {
        gens.iter().map(|s| parse(s, p).unwrap()).collect()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        assert_eq!(basis(&["x^2", "y^2"], 5).generators(), polys(&["y^2", "x^2"], 5));
    }

    #[test]
    fn inter_reduction() {
        assert_eq!(basis(&["x+y", "y"], 7).generators(), polys(&["y", "x"], 7));
    }

    #[test]
    fn singleton_is_made_monic() {
        let b = basis(&["3x^3 + y^3 + 2z^3"], 5);
        assert_eq!(b.generators(), polys(&["x^3 + 2y^3 + 4z^3"], 5));
    }

    #[test]
    fn normal_form_examples() {
        let b = basis(&["x", "y", "x^3+y^3+z^3"], 2);
        assert_eq!(b.generators(), polys(&["y", "x", "z^3"], 2));
        let z2 = parse("z^2", 2).unwrap();
        assert_eq!(b.normal_form(&z2), z2);
        for g in b.generators() {
            assert!(b.normal_form(g).is_zero());
        }
        let fermat = basis(&["x^3+y^3+z^3"], 2);
        assert_eq!(
            fermat.normal_form(&parse("x^3", 2).unwrap()),
            parse("y^3+z^3", 2).unwrap()
        );
    }

    #[test]
    fn membership_examples() {
        let b = basis(&["x^2", "y^2", "x^3+y^3+z^3"], 2);
        assert!(b.member(&parse("z^4", 2).unwrap()));
        let b2 = basis(&["x", "y", "x^3+y^3+z^3"], 2);
        assert!(!b2.member(&parse("z^2", 2).unwrap()));
        assert!(b.member(&parse("x^3+y^3+z^3", 2).unwrap()));
    }

    #[test]
    fn standard_monomial_examples() {
        let b = basis(&["x", "y", "x^3+y^3+z^3"], 2);
        assert_eq!(b.standard_monomials(2), vec![Monomial::new(0, 0, 2)]);
        assert!(b.standard_monomials(3).is_empty());
        assert_eq!(b.standard_monomials(0), vec![Monomial::ONE]);
    }

    #[test]
    fn primary_examples() {
        assert!(basis(&["x", "y", "x^3+y^3+z^3"], 2).is_irrelevant_primary());
        assert!(!basis(&["x", "x^3+y^3+z^3"], 2).is_irrelevant_primary());
        assert!(basis(&["x", "y", "z"], 2).is_irrelevant_primary());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let gens = polys(&["x^2 + yz", "y^2 + xz", "z^2 + xy + x^2"], 5);
        let tight = Budget {
            max_pairs: 1,
            max_degree: 100,
        };
        assert!(matches!(buchberger(&gens, &tight), Err(Error::Budget(_))));
        let low = Budget {
            max_pairs: 100,
            max_degree: 2,
        };
        assert!(matches!(buchberger(&gens, &low), Err(Error::Budget(_))));
    }

    #[test]
    fn unit_ideal() {
        let b = basis(&["x + 1", "x"], 3);
        assert!(b.is_unit_ideal());
        assert_eq!(b.generators(), polys(&["1"], 3));
        assert!(b.standard_monomials(0).is_empty());
    }

    fn arb_homogeneous(p: u32) -> impl Strategy<Value = Poly> {
        (1u32..=3).prop_flat_map(move |d| {
            let monos = Monomial::all_of_degree(d);
            prop::collection::vec(0i64..p as i64, monos.len()).prop_map(move |cs| {
                Poly::from_terms(monos.clone().into_iter().zip(cs), p)
            })
        })
    }

    fn arb_ideal() -> impl Strategy<Value = (u32, Vec<Poly>)> {
        prop::sample::select(vec![2u32, 3, 5])
            .prop_flat_map(|p| (Just(p), prop::collection::vec(arb_homogeneous(p), 1..=3)))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn output_is_reduced_groebner_basis((p, gens) in arb_ideal()) {
            let b = buchberger_in(&gens, p, &Budget::default()).unwrap();
            prop_assert!(b.satisfies_buchberger_criterion());
            let lms = b.leading_monomials();
            for (i, g) in b.generators().iter().enumerate() {
                prop_assert_eq!(g.leading_coefficient().unwrap().value(), 1);
                for (k, lm) in lms.iter().enumerate() {
                    if k != i {
                        prop_assert!(g.monomials().all(|t| !lm.divides(&t)));
                    }
                }
            }
            for g in &gens {
                prop_assert!(b.member(g));
            }
        }

        #[test]
        fn normal_form_is_idempotent_and_absorbs(
            (p, gens) in arb_ideal(),
            f in prop::collection::vec(((0u32..4, 0u32..4, 0u32..4), 0i64..5), 0..6),
            h in prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), 0i64..5), 0..4),
        ) {
            let b = buchberger_in(&gens, p, &Budget::default()).unwrap();
            let f = Poly::from_terms(f.into_iter().map(|((a, bb, c), k)| (Monomial::new(a, bb, c), k)), p);
            let h = Poly::from_terms(h.into_iter().map(|((a, bb, c), k)| (Monomial::new(a, bb, c), k)), p);
            let nf = b.normal_form(&f);
            prop_assert_eq!(b.normal_form(&nf), nf.clone());
            prop_assert!(b.member(&(&f - &nf)));
            let absorbed = &(&gens[0] * &h) + &f;
            prop_assert_eq!(b.member(&absorbed), b.member(&f));
        }

        #[test]
        fn basis_is_independent_of_generator_order((p, mut gens) in arb_ideal()) {
            let a = buchberger_in(&gens, p, &Budget::default()).unwrap();
            gens.reverse();
            let b = buchberger_in(&gens, p, &Budget::default()).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn truncated_basis_agrees_below_limit((p, gens) in arb_ideal(), limit in 0u64..7) {
            let full = buchberger_in(&gens, p, &Budget::default()).unwrap();
            let part = buchberger_truncated(&gens, p, &Budget::default(), limit).unwrap();
            prop_assert_eq!(part.truncation(), Some(limit));
            for d in 0..=limit as u32 {
                for m in Monomial::all_of_degree(d) {
                    let f = Poly::monomial(m, p);
                    prop_assert_eq!(part.normal_form(&f), full.normal_form(&f));
                }
            }
        }
    }

    #[test]
    fn truncation_rejects_inhomogeneous_input() {
        let gens = polys(&["x^2+y"], 3);
        assert!(matches!(
            buchberger_truncated(&gens, 3, &Budget::default(), 4),
            Err(Error::NotHomogeneous(_))
        ));
    }
}
