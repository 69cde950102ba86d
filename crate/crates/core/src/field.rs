//! Prime field arithmetic and dense linear algebra over F_p.
//!
//! Residues are stored as `u32` fully reduced into `[0, p)`. Since `p < 2^31`
//! every product of two residues fits in a `u64` before reduction.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest admissible modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 31;

/// Deterministic primality test by trial division; moduli are below 2^31.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Checks that `p` is an admissible prime modulus and narrows it to `u32`.
pub fn check_modulus(p: u64) -> Result<u32> {
    if p >= MAX_MODULUS || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(p as u32)
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    let p = p as u64;
    (if s >= p { s - p } else { s }) as u32
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        (a as u64 + p as u64 - b as u64) as u32
    }
}

#[inline]
pub(crate) fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn pow_mod(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse via Fermat's little theorem. `a` must be nonzero mod `p`.
#[inline]
pub(crate) fn inv_mod(a: u32, p: u32) -> Result<u32> {
    if a % p == 0 {
        return Err(Error::DivisionByZero(p));
    }
    Ok(pow_mod(a, p as u64 - 2, p))
}

/// Reduces a signed integer into `[0, p)`.
pub(crate) fn reduce_i64(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

/// An element of the prime field F_p.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    modulus: u32,
}

impl FieldElement {
    /// Builds the residue of `value` modulo `modulus`. The modulus is trusted
    /// to be prime; use [`check_modulus`] at the boundary.
    pub fn new(value: u64, modulus: u32) -> Self {
        debug_assert!(modulus >= 2);
        FieldElement {
            value: (value % modulus as u64) as u32,
            modulus,
        }
    }

    pub fn from_i64(value: i64, modulus: u32) -> Self {
        FieldElement {
            value: reduce_i64(value, modulus),
            modulus,
        }
    }

    pub fn zero(modulus: u32) -> Self {
        FieldElement { value: 0, modulus }
    }

    pub fn one(modulus: u32) -> Self {
        FieldElement::new(1, modulus)
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(self) -> Result<Self> {
        Ok(FieldElement {
            value: inv_mod(self.value, self.modulus)?,
            modulus: self.modulus,
        })
    }

    pub fn pow(self, exp: u64) -> Self {
        FieldElement {
            value: pow_mod(self.value, exp, self.modulus),
            modulus: self.modulus,
        }
    }

    fn same_field(self, other: Self) {
        assert_eq!(
            self.modulus, other.modulus,
            "field elements from different prime fields"
        );
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> Self {
        self.same_field(rhs);
        FieldElement {
            value: add_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: Self) -> Self {
        self.same_field(rhs);
        FieldElement {
            value: sub_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> Self {
        self.same_field(rhs);
        FieldElement {
            value: mul_mod(self.value, rhs.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> Self {
        FieldElement {
            value: neg_mod(self.value, self.modulus),
            modulus: self.modulus,
        }
    }
}

/// Dense row-major matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    modulus: u32,
    entries: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: u32) -> Self {
        FpMatrix {
            rows,
            cols,
            modulus,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, modulus: u32) -> Self {
        let mut m = FpMatrix::zeros(n, n, modulus);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of integers, reducing each entry mod `modulus`.
    /// Panics if the rows have different lengths.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R], cols: usize, modulus: u32) -> Self {
        let mut m = FpMatrix::zeros(rows.len(), cols, modulus);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged matrix rows");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, reduce_i64(v, modulus));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.entries[i * self.cols + j] = v % self.modulus;
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.modulus;
        (0..self.rows)
            .map(|i| {
                let row = &self.entries[i * self.cols..(i + 1) * self.cols];
                row.iter()
                    .zip(v)
                    .fold(0u32, |acc, (&a, &b)| add_mod(acc, mul_mod(a, b, p), p))
            })
            .collect()
    }

    /// Reduced row echelon form in place. Returns the pivot column of each
    /// nonzero row, in order.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let p = self.modulus;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.entries.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = inv_mod(self.get(r, c), p).expect("pivot is nonzero");
            for j in c..cols {
                let v = mul_mod(self.get(r, j), inv, p);
                self.entries[r * cols + j] = v;
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    let v = sub_mod(self.get(i, j), mul_mod(factor, self.get(r, j), p), p);
                    self.entries[i * cols + j] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().row_reduce().len()
    }

    /// A basis of the null space `{v : M v = 0}`, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let p = self.modulus;
        let mut reduced = self.clone();
        let pivots = reduced.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u32; self.cols];
                v[free] = 1;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = neg_mod(reduced.get(row, free), p);
                }
                v
            })
            .collect()
    }
}

/// Free-function form of [`FpMatrix::kernel_basis`].
pub fn kernel_basis(m: &FpMatrix) -> Vec<Vec<u32>> {
    m.kernel_basis()
}

/// Inverse of a field element; fails on zero.
pub fn ff_inv(a: FieldElement) -> Result<FieldElement> {
    a.inv()
}
