use thiserror::Error;

/// Errors produced by construction and solver entry points.
///
/// Arithmetic on mismatched fields and out-of-range indexing are treated as
/// programming errors and panic instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic 2 excluded")]
    CharacteristicTwo,
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("cannot invert zero")]
    DivisionByZero,
    #[error("cannot parse {0:?} as a scalar of {1}")]
    ScalarParse(String, String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("{0}")]
    InvalidTable(String),
    #[error("derivation is zero")]
    ZeroDerivation,
    #[error("Leibniz rule fails on basis pair ({0}, {1})")]
    LeibnizViolation(usize, usize),
    #[error("truncated polynomial algebra requires a prime field")]
    RequiresPrimeField,
    #[error("operation requires a prime field (got rationals)")]
    RequiresFiniteField,
    #[error("operation requires the rational field")]
    RequiresRationalField,
    #[error("table completion produced a contradictory assignment for ({0}, {1})")]
    ContradictoryCompletion(usize, usize),
    #[error("constructed algebra fails validation: {0}")]
    ConstructionInvalid(String),
    #[error("algebra file is invalid: {0}")]
    BadAlgebraFile(String),
    #[error("dimension {0} exceeds the supported desk-scale limit")]
    TooLarge(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
