//! Sparse polynomials in `x, y, z` over a prime field.
//!
//! Terms are kept sorted in descending graded reverse lexicographic order
//! (`x > y > z`) with nonzero coefficients, so two polynomials are equal
//! exactly when their term vectors are.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{self, FieldElement};

/// Default bound on total degree for Frobenius powers.
pub const DEFAULT_DEGREE_CAP: u64 = 1_000_000;

/// Exponent vector of `x^a y^b z^c`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub const fn new(a: u32, b: u32, c: u32) -> Self {
        Monomial([a, b, c])
    }

    /// The variable `x`, `y` or `z` for `index` 0, 1 or 2.
    pub fn var(index: usize) -> Self {
        let mut e = [0; 3];
        e[index] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> [u32; 3] {
        self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0).all(|(&a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0].max(other.0[0]),
            self.0[1].max(other.0[1]),
            self.0[2].max(other.0[2]),
        ])
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0).all(|(&a, b)| a == 0 || b == 0)
    }

    /// `self / other`, provided `other` divides `self`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| {
            Monomial([
                self.0[0] - other.0[0],
                self.0[1] - other.0[1],
                self.0[2] - other.0[2],
            ])
        })
    }

    /// If this is `v^k` for a single variable `v` and `k >= 1`, returns `(v, k)`.
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let nonzero: Vec<usize> = (0..3).filter(|&i| self.0[i] > 0).collect();
        match nonzero.as_slice() {
            [i] => Some((*i, self.0[*i])),
            _ => None,
        }
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        Some(Monomial([
            self.0[0].checked_add(other.0[0])?,
            self.0[1].checked_add(other.0[1])?,
            self.0[2].checked_add(other.0[2])?,
        ]))
    }

    fn scaled(&self, k: u32) -> Option<Monomial> {
        Some(Monomial([
            self.0[0].checked_mul(k)?,
            self.0[1].checked_mul(k)?,
            self.0[2].checked_mul(k)?,
        ]))
    }

    /// All monomials of total degree `d`, in descending term order.
    pub fn all_of_degree(d: u32) -> Vec<Monomial> {
        let mut out = Vec::with_capacity(((d as usize + 1) * (d as usize + 2)) / 2);
        // Descending grevlex: smallest z exponent first, then smallest y.
        for c in 0..=d {
            for b in 0..=(d - c) {
                out.push(Monomial([d - b - c, b, c]));
            }
        }
        out
    }
}

impl std::ops::Mul for Monomial {
    type Output = Monomial;
    fn mul(self, rhs: Monomial) -> Monomial {
        self.checked_mul(&rhs).expect("monomial exponent overflow")
    }
}

impl Ord for Monomial {
    /// Graded reverse lexicographic order with `x > y > z`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0[2].cmp(&self.0[2]))
            .then_with(|| other.0[1].cmp(&self.0[1]))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Monomial::ONE {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, name) in ['x', 'y', 'z'].iter().enumerate() {
            let e = self.0[i];
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Result of a homogeneity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial, homogeneous of every degree.
    Zero,
    Degree(u64),
    Mixed,
}

/// A polynomial in `F_p[x, y, z]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    modulus: u32,
    /// Descending term order, no zero coefficients.
    terms: Vec<(Monomial, u32)>,
}

impl Poly {
    pub fn zero(modulus: u32) -> Self {
        Poly {
            modulus,
            terms: Vec::new(),
        }
    }

    pub fn constant(c: i64, modulus: u32) -> Self {
        Poly::term(Monomial::ONE, c, modulus)
    }

    pub fn one(modulus: u32) -> Self {
        Poly::constant(1, modulus)
    }

    pub fn term(m: Monomial, c: i64, modulus: u32) -> Self {
        let c = field::reduce_i64(c, modulus);
        Poly {
            modulus,
            terms: if c == 0 { Vec::new() } else { vec![(m, c)] },
        }
    }

    pub fn monomial(m: Monomial, modulus: u32) -> Self {
        Poly::term(m, 1, modulus)
    }

    /// The variable `x`, `y` or `z` for `index` 0, 1 or 2.
    pub fn var(index: usize, modulus: u32) -> Self {
        Poly::monomial(Monomial::var(index), modulus)
    }

    /// Collects arbitrary `(monomial, coefficient)` pairs, combining
    /// duplicates and dropping zeros.
    pub fn from_terms<I>(terms: I, modulus: u32) -> Self
    where
        I: IntoIterator<Item = (Monomial, i64)>,
    {
        let mut acc: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (m, c) in terms {
            let c = field::reduce_i64(c, modulus);
            let slot = acc.entry(m).or_insert(0);
            *slot = field::add_mod(*slot, c, modulus);
        }
        Poly::from_map(acc, modulus)
    }

    pub(crate) fn from_map(map: BTreeMap<Monomial, u32>, modulus: u32) -> Self {
        Poly {
            modulus,
            terms: map.into_iter().rev().filter(|&(_, c)| c != 0).collect(),
        }
    }

    /// Trusted constructor: `terms` must already be in descending order with
    /// nonzero reduced coefficients.
    pub(crate) fn from_sorted(terms: Vec<(Monomial, u32)>, modulus: u32) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|&(_, c)| c != 0 && c < modulus));
        Poly { modulus, terms }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, FieldElement)> + '_ {
        let p = self.modulus;
        self.terms
            .iter()
            .map(move |&(m, c)| (m, FieldElement::new(c as u64, p)))
    }

    pub(crate) fn raw_terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.iter().map(|&(m, _)| m)
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        let c = self
            .terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1)
            .unwrap_or(0);
        FieldElement::new(c as u64, self.modulus)
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|&(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<FieldElement> {
        self.terms
            .first()
            .map(|&(_, c)| FieldElement::new(c as u64, self.modulus))
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let Some(d) = self.terms.first().map(|(m, _)| m.degree()) else {
            return Homogeneity::Zero;
        };
        if self.terms.iter().all(|(m, _)| m.degree() == d) {
            Homogeneity::Degree(d)
        } else {
            Homogeneity::Mixed
        }
    }

    /// The common degree of all terms, or `None` when the polynomial is zero
    /// or not homogeneous. See [`Poly::homogeneity`] to tell those apart.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        match self.homogeneity() {
            Homogeneity::Degree(d) => Some(d),
            _ => None,
        }
    }

    fn check_same(&self, other: &Poly) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(())
    }

    /// `self + scale * other`, merging the sorted term lists.
    fn add_scaled(&self, other: &Poly, scale: u32) -> Poly {
        let p = self.modulus;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i]);
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = other.terms[j];
                    let c = field::mul_mod(c, scale, p);
                    if c != 0 {
                        out.push((m, c));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let (m, a) = self.terms[i];
                    let c = field::add_mod(a, field::mul_mod(other.terms[j].1, scale, p), p);
                    if c != 0 {
                        out.push((m, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly::from_sorted(out, p)
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        Ok(self.add_scaled(other, 1))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        Ok(self.add_scaled(other, self.modulus - 1))
    }

    /// Product of two polynomials over the same field.
    pub fn multiply(&self, other: &Poly) -> Result<Poly> {
        self.check_same(other)?;
        let p = self.modulus;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(p));
        }
        if other.terms.len() == 1 {
            let (m, c) = other.terms[0];
            return Ok(self.mul_term(m, c));
        }
        let mut acc: BTreeMap<Monomial, u32> = BTreeMap::new();
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &other.terms {
                let slot = acc.entry(ma * mb).or_insert(0);
                *slot = field::add_mod(*slot, field::mul_mod(ca, cb, p), p);
            }
        }
        Ok(Poly::from_map(acc, p))
    }

    /// Multiplies by `c * m`; term order is preserved by monomial shifts.
    pub(crate) fn mul_term(&self, m: Monomial, c: u32) -> Poly {
        let p = self.modulus;
        let c = c % p;
        if c == 0 {
            return Poly::zero(p);
        }
        Poly::from_sorted(
            self.terms
                .iter()
                .map(|&(t, a)| (t * m, field::mul_mod(a, c, p)))
                .collect(),
            p,
        )
    }

    pub fn mul_monomial(&self, m: Monomial) -> Poly {
        self.mul_term(m, 1)
    }

    pub fn scale(&self, c: FieldElement) -> Poly {
        assert_eq!(c.modulus(), self.modulus);
        self.mul_term(Monomial::ONE, c.value())
    }

    /// Scales so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some(&(_, 1)) => self.clone(),
            Some(&(_, lc)) => {
                let inv = field::inv_mod(lc, self.modulus).expect("nonzero leading coefficient");
                self.mul_term(Monomial::ONE, inv)
            }
        }
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.modulus);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.multiply(&base).expect("same modulus");
            }
            k >>= 1;
            if k > 0 {
                base = base.multiply(&base).expect("same modulus");
            }
        }
        acc
    }

    /// `f^(p^e)` via the characteristic-p identity `(sum c m)^p = sum c^p m^p`,
    /// iterated `e` times. Coefficients are fixed because `c^p = c` in F_p.
    pub fn frobenius_pow(&self, e: u32, degree_cap: u64) -> Result<Poly> {
        let p = self.modulus;
        let q = (p as u64)
            .checked_pow(e)
            .ok_or_else(|| Error::Overflow(format!("{p}^{e}")))?;
        let deg = self.total_degree().unwrap_or(0);
        let required = deg
            .checked_mul(q)
            .ok_or_else(|| Error::Overflow(format!("degree {deg} * {p}^{e}")))?;
        if required > degree_cap {
            return Err(Error::DegreeCap {
                required,
                cap: degree_cap,
                hint: Some(format!("Frobenius power q = {p}^{e} = {q}")),
            });
        }
        let q32 = u32::try_from(q).map_err(|_| Error::Overflow(format!("q = {q}")))?;
        // Scaling exponents by q preserves the term order, and c^q = c.
        let terms = self
            .terms
            .iter()
            .map(|&(m, c)| {
                m.scaled(q32)
                    .map(|m| (m, c))
                    .ok_or_else(|| Error::Overflow(format!("exponent of {m} times {q}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::from_sorted(terms, p))
    }

    /// Formal partial derivative with respect to variable `index`.
    pub fn derivative(&self, index: usize) -> Poly {
        let p = self.modulus;
        Poly::from_terms(
            self.terms.iter().filter(|(m, _)| m.0[index] > 0).map(|&(m, c)| {
                let e = m.0[index];
                let mut d = m;
                d.0[index] -= 1;
                (d, field::mul_mod(c, e % p, p) as i64)
            }),
            p,
        )
    }

    /// Parses a polynomial expression; coefficients are reduced mod `p`.
    pub fn parse(expr: &str, p: u32) -> Result<Poly> {
        parse(expr, p)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, &(m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match (c, m == Monomial::ONE) {
                (_, true) => write!(f, "{c}")?,
                (1, false) => write!(f, "{m}")?,
                _ => write!(f, "{c}*{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self, self.modulus)
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs).expect("modulus mismatch")
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs).expect("modulus mismatch")
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.multiply(rhs).expect("modulus mismatch")
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.mul_term(Monomial::ONE, self.modulus - 1)
    }
}

// Grammar (whitespace is ignored):
//
//   expr   = ["+" | "-"] term { ("+" | "-") term }
//   term   = factor { ["*"] factor }
//   factor = atom ["^" int]
//   atom   = int | "x" | "y" | "z" | "(" expr ")"

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    p: u32,
}

/// Parses a polynomial expression in `x, y, z` with integer coefficients.
pub fn parse(expr: &str, p: u32) -> Result<Poly> {
    let mut parser = Parser {
        src: expr.as_bytes(),
        pos: 0,
        p,
    };
    parser.skip_ws();
    if parser.at_end() {
        return Err(parser.error("empty expression"));
    }
    let poly = parser.expr()?;
    parser.skip_ws();
    if !parser.at_end() {
        return Err(parser.error(&format!("unexpected `{}`", parser.src[parser.pos] as char)));
    }
    Ok(poly)
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        self.skip_ws();
        let mut negate = false;
        if let Some(c @ (b'+' | b'-')) = self.peek() {
            negate = c == b'-';
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected exponent after `^`"));
            }
            let exp: u32 = digits.parse().map_err(|_| Error::Syntax {
                position: start,
                message: format!("exponent `{digits}` out of range"),
            })?;
            return Ok(base.pow(exp as u64));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Poly> {
        self.skip_ws();
        let p = self.p;
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(c) if c.is_ascii_digit() => {
                let value = self
                    .digits()
                    .bytes()
                    .fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p as u64);
                Ok(Poly::constant(value as i64, p))
            }
            Some(b'x') | Some(b'y') | Some(b'z') => {
                let index = (self.src[self.pos] - b'x') as usize;
                self.pos += 1;
                Ok(Poly::var(index, p))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_alphabetic() => Err(Error::UnknownVariable {
                name: c as char,
                position: self.pos,
            }),
            Some(c) => Err(self.error(&format!("unexpected `{}`", c as char))),
        }
    }
}
