use thiserror::Error;

use crate::qnr::Rejection;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: expected an odd prime")]
    InvalidModulus(u64),

    #[error("invalid extension modulus: {0}")]
    InvalidExtension(String),

    #[error("{a} is not invertible modulo {m}")]
    NotInvertible { a: u64, m: u64 },

    #[error("invalid conductor {0}")]
    InvalidConductor(u64),

    #[error("no subgroup of index {d} in the unit group mod {r}")]
    NoSuchSubgroup { r: u64, d: u64 },

    #[error("period product for r = {r}, d = {d} has a non-constant coefficient")]
    NonIntegerCoefficients { r: u64, d: u64 },

    #[error("substitution does not yield integer coefficients")]
    NonIntegerResult,

    #[error("input exceeds the brute-force limits: {0}")]
    DeskScaleExceeded(String),

    #[error("polynomial is reducible over F_{p}")]
    ReduciblePolynomial { p: u64 },

    #[error("trace matrix is singular modulo {p}")]
    SingularTraceMatrix { p: u64 },

    #[error("no reciprocity shortcut for p = {0} (p = 1 mod 8)")]
    NoShortcut(u64),

    #[error("degenerate pair: s*z = +-v modulo {p}")]
    DegeneratePair { p: u64 },

    #[error("{a} is not a quadratic residue modulo {p}")]
    NotAResidue { a: u64, p: u64 },

    #[error("zero denominator in the root sum at index {index} modulo {p}")]
    ZeroDenominator { index: u64, p: u64 },

    #[error("no period parameters with r <= {bound}")]
    NoParametersFound { bound: u64, rejections: Vec<Rejection> },

    #[error("no conductor in the Fermat set produced a verified discriminant")]
    FallbackExhausted { rejections: Vec<Rejection> },

    #[error("could not construct a verified irreducible polynomial of degree {degree}")]
    ConstructionFailed { degree: usize },

    #[error("linear fractional map is singular (ad - bc = 0)")]
    SingularTransform,

    #[error("transformed polynomial loses degree")]
    DegreeDrop,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
