use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The complex dimension must be at least 2; the circle `n = 1` has no
    /// disc-polynomial weight.
    #[error("dimension n = {0} is not supported (need n >= 2)")]
    DimensionTooSmall(usize),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    /// A denominator Pochhammer symbol vanished before the numerator
    /// terminated the series.
    #[error("hypergeometric denominator parameter {param} hits zero at term {term}")]
    DenominatorPole { param: String, term: usize },

    #[error("polynomial is not bihomogeneous")]
    NotBihomogeneous,

    #[error("polynomial is zero")]
    ZeroPolynomial,

    #[error("polynomial is not harmonic")]
    NotHarmonic,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Exact linear solve in the brute-force decomposition hit a singular pivot.
    #[error("singular linear system in brute-force decomposition")]
    SingularSystem,

    /// The profile gives no way to bound the tail of the coefficient series.
    #[error("cannot certify convergence for bidegree ({p}, {q}): {reason}")]
    Uncertified { p: usize, q: usize, reason: String },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("invalid quadrature rule: {0}")]
    InvalidRule(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
