use thiserror::Error;

/// Errors produced by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in F_{0}")]
    DivisionByZero(u32),

    #[error("modulus {0} is not a prime in [2, 2^31)")]
    NotPrime(u64),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown variable `{name}` at position {position} (expected x, y or z)")]
    UnknownVariable { name: char, position: usize },

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("generator is zero")]
    ZeroGenerator,

    #[error("not an elliptic cone: {0}")]
    NotElliptic(String),

    #[error("ideal is not primary to the irrelevant ideal (quotient is infinite-dimensional)")]
    NotPrimary,

    #[error("need at least {needed} generators, got {got}")]
    TooFewGenerators { needed: usize, got: usize },

    #[error("degree {required} exceeds the degree cap {cap}{}", hint.as_deref().map(|h| format!(" ({h})")).unwrap_or_default())]
    DegreeCap {
        required: u64,
        cap: u64,
        hint: Option<String>,
    },

    #[error("Gröbner budget exhausted: {0}")]
    Budget(String),

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Budget and cap failures are resource errors; callers may retry with
    /// larger limits.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::DegreeCap { .. } | Error::Budget(_) | Error::Overflow(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
