//! Frobenius closure and tight closure of homogeneous primary ideals in the
//! homogeneous coordinate ring `F_p[x,y,z]/(G)` of a smooth plane cubic.
//!
//! Membership questions reduce to Gröbner basis computations over `F_p`:
//!
//! * `f ∈ I^F` iff `f^q ∈ I^[q]` for `q = p^(n-1)`, `n` the number of
//!   generators of `I`;
//! * `f ∈ I*` iff `w f^q ∈ I^[q]` for `w ∈ {x, y, z}` and all `q = p^e`
//!   with `e` up to the smallest exponent satisfying `p^e > 7(n-1)`.
//!
//! ```
//! use charclose_core::{closure, CubicCone, Poly};
//!
//! let ring = CubicCone::new(Poly::parse("x^3 + y^3 + z^3", 2)?)?;
//! let ideal = ring.ideal_from_strs(&["x", "y"])?;
//! let report = closure::in_frobenius_closure(&ring.parse("z^2")?, &ideal)?;
//! assert!(report.verdict);
//! # Ok::<(), charclose_core::Error>(())
//! ```

pub mod closure;
pub mod curve;
pub mod error;
pub mod field;
pub mod groebner;
pub mod poly;
pub mod sample;
pub mod search;
pub mod syzygy;

pub use closure::{Bound, ClosureReport, QueryKind, Witness};
pub use curve::{CubicCone, HomIdeal, Limits};
pub use error::{Error, Result};
pub use field::{FieldElement, FpMatrix};
pub use groebner::{buchberger, Budget, GroebnerBasis};
pub use poly::{Homogeneity, Monomial, Poly};
pub use syzygy::SyzygyInfo;
