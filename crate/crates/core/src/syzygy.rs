//! Rank and degree of syzygy bundles on the cubic, and how they scale under
//! Frobenius pull-back.
//!
//! For `I = (f_1, ..., f_n)` with `deg f_i = d_i`, the syzygy bundle twisted
//! by `m` sits in
//!
//! ```text
//! 0 -> Syz(f_1, ..., f_n)(m) -> ⊕ O_C(m - d_i) -> O_C(m) -> 0
//! ```
//!
//! so its rank is `n - 1` and, with `deg O_C(k) = 3k`, its degree is
//! `3((n - 1)m - Σ d_i)`.

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::curve::{HomIdeal, CURVE_DEGREE};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyzygyInfo {
    pub rank: u64,
    pub degree: i64,
    #[serde(serialize_with = "ratio")]
    pub slope: Ratio<i64>,
    pub twist: i64,
    pub generator_degrees: Vec<i64>,
}

fn ratio<S: Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&format_args!("{}/{}", r.numer(), r.denom()))
}

fn overflow(what: &str) -> Error {
    Error::Overflow(what.to_string())
}

impl SyzygyInfo {
    /// Numerics from generator degrees and twist.
    pub fn from_degrees(generator_degrees: Vec<i64>, twist: i64) -> Result<Self> {
        let n = generator_degrees.len();
        if n < 2 {
            return Err(Error::TooFewGenerators { needed: 2, got: n });
        }
        let rank = (n - 1) as i64;
        let sum = generator_degrees
            .iter()
            .try_fold(0i64, |acc, &d| acc.checked_add(d))
            .ok_or_else(|| overflow("sum of generator degrees"))?;
        let degree = rank
            .checked_mul(twist)
            .and_then(|v| v.checked_sub(sum))
            .and_then(|v| v.checked_mul(CURVE_DEGREE as i64))
            .ok_or_else(|| overflow("syzygy degree"))?;
        Ok(SyzygyInfo {
            rank: rank as u64,
            degree,
            slope: Ratio::new(degree, rank),
            twist,
            generator_degrees,
        })
    }
}

/// Rank, degree and slope of `Syz(f_1, ..., f_n)(m)`.
pub fn syzygy_numerics(ideal: &HomIdeal, twist: i64) -> Result<SyzygyInfo> {
    let degrees = ideal
        .degrees()
        .into_iter()
        .map(|d| i64::try_from(d).map_err(|_| overflow("generator degree")))
        .collect::<Result<Vec<_>>>()?;
    SyzygyInfo::from_degrees(degrees, twist)
}

/// Numerics of the `e`-th Frobenius pull-back: the rank is unchanged while
/// degree, twist and generator degrees scale by `q = p^e`.
pub fn pullback_numerics(info: &SyzygyInfo, e: u32, p: u32) -> Result<SyzygyInfo> {
    let q = (p as i64)
        .checked_pow(e)
        .ok_or_else(|| overflow("p^e"))?;
    let scale = |v: i64| v.checked_mul(q).ok_or_else(|| overflow("pull-back degree"));
    let degree = scale(info.degree)?;
    Ok(SyzygyInfo {
        rank: info.rank,
        degree,
        slope: Ratio::new(degree, info.rank as i64),
        twist: scale(info.twist)?,
        generator_degrees: info
            .generator_degrees
            .iter()
            .map(|&d| scale(d))
            .collect::<Result<Vec<_>>>()?,
    })
}
