use thiserror::Error;

/// Errors shared across the crate. Variant names follow the operation
/// contracts: domain violations, missing expansions, resource caps and the
/// internal invariant guards are all distinguishable by the caller.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("no even expansion: numerator and denominator are both odd")]
    NoEvenExpansion,
    #[error("not coprime: gcd({0}, {1}) != 1")]
    NotCoprime(String, String),
    #[error("invalid continued fraction: {0}")]
    InvalidCf(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution produced a non-polynomial result: {0}")]
    SubstitutionSingularity(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
