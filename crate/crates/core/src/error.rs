use thiserror::Error;

use crate::scalars::RingKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different rings ({0} and {1})")]
    MixedRings(RingKind, RingKind),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not invertible in {1}")]
    NotInvertible(String, RingKind),
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("zero input where a nonzero value is required")]
    ZeroInput,
    #[error("irreducible factor of degree {degree} exceeds the factor degree bound {bound}")]
    FactorDegreeExceeded { degree: usize, bound: usize },
    #[error("the element {0} is excluded from the configured additive basis")]
    BasisElementExcluded(String),
    #[error("vector lengths do not match: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("elements belong to different group schemas")]
    SchemaMismatch,
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("invalid group schema: {0}")]
    InvalidSchema(String),
    #[error("keys of different variants cannot be compared")]
    MixedVariants,
    #[error("strategy mismatch: {0}")]
    StrategyMismatch(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator `{name}` at position {pos}")]
    UnknownGenerator { pos: usize, name: String },
    #[error("scalar at position {pos} is not in {ring}: {msg}")]
    ScalarNotInRing { pos: usize, ring: RingKind, msg: String },
    #[error("non-integer input: {0}")]
    NonIntegerInput(String),
}

impl Error {
    /// Errors caused by the bounded factorization step rather than by the input itself.
    pub fn is_factor_bound(&self) -> bool {
        matches!(self, Error::FactorDegreeExceeded { .. })
    }
}
