use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic 2 is not supported (got p = {0})")]
    EvenCharacteristic(u64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    InvalidDegree,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    SpecMismatch,
    #[error("polynomial vanishes at zero, reciprocal undefined")]
    NotInvertibleAtZero,
    #[error("operation requires a non-constant polynomial")]
    ConstantPolynomial,
    #[error("x^{n}+1 is not separable over F_{q}: the characteristic divides n")]
    NotSeparable { n: usize, q: u64 },
    #[error("length {0} is not a power of two >= 2")]
    UnsupportedLength(usize),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("theorem violated: {0}")]
    InternalTheoremViolation(String),
    #[error("malformed factorization: {0}")]
    MalformedFactorization(String),
    #[error("code is not self-dual")]
    NotSelfDual,
    #[error("hypothesis not met: {0}")]
    HypothesisUnmet(String),
    #[error("capacity exceeded: {required} work units required, limit is {limit}")]
    Capacity { required: u128, limit: u64 },
    #[error("value out of domain: {0}")]
    Domain(String),
    #[error("expected length {expected}, got {got}")]
    Length { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
