use thiserror::Error;

/// Errors surfaced by the arithmetic layer and everything built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("denominator is divisible by p = {0}")]
    DenominatorDivisibleByP(u64),
    #[error("zero has no valuation")]
    ZeroHasNoValuation,
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("insufficient precision: cannot invert an apparent zero")]
    InsufficientPrecision,
    #[error("p = {p} divides the denominator of B_{index}")]
    IrregularDenominator { p: u64, index: usize },
    #[error("p-adic evaluation needs n < p (n = {n}, p = {p})")]
    NOutOfRange { n: u64, p: u64 },
    #[error("empty index: depth must be at least 1")]
    EmptyIndex,
    #[error("index entries must be nonzero")]
    ZeroIndexEntry,
    #[error("evaluation outside the pair's domain (n = {n}, k = {k})")]
    DomainViolation { n: u64, k: u64 },
    #[error("parameter a = {0} hits a Pochhammer zero or pole")]
    PochhammerPole(String),
    #[error("unknown identity id: {0}")]
    UnknownIdentity(String),
    #[error("unknown claim id: {0}")]
    UnknownClaim(String),
}

pub type Result<T> = std::result::Result<T, ArithError>;
