use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported Lie type: family {family}, rank {rank}")]
    UnsupportedType { family: String, rank: usize },

    #[error("cannot parse Lie type {0:?}")]
    BadTypeName(String),

    #[error("index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("Weyl group order {order} exceeds the cap {cap}")]
    GroupTooLarge { order: u64, cap: u64 },

    #[error("dominant-weight budget exceeded: reached {reached} weights (limit {limit})")]
    BudgetExceeded { reached: usize, limit: usize },

    #[error("enumeration of {points} points exceeds the cap {cap}")]
    EnumerationCap { points: u128, cap: u64 },

    #[error("non-integral coefficient {coeff} in component {component} (convention bug)")]
    Integrality { component: usize, coeff: String },

    #[error("input is not W-invariant: orbit of dominant weight {orbit:?} has unequal coefficients")]
    NotInvariant { orbit: Vec<i64> },

    #[error("Lie type mismatch: {left} vs {right}")]
    TypeMismatch { left: String, right: String },

    #[error("parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(String),

    #[error("division by zero in a finite field")]
    DivisionByZero,

    #[error("field or dimension mismatch: {0}")]
    FieldMismatch(String),

    #[error("fixed-point deduplication ambiguous: clusters {distance:e} apart (tolerance {tolerance:e}); review the tolerance")]
    DedupAmbiguity { distance: f64, tolerance: f64 },

    #[error("fixed-point count {found} differs from the expected {expected}")]
    FixedPointCount { found: usize, expected: u128 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}
