//! Error type shared by the whole crate.

use thiserror::Error;

/// Errors reported by constructors and operations.
///
/// Every fallible operation returns one of these; invariants that can only be
/// broken by bugs inside the crate are covered by assertions instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("base {0} is invalid; expansions need base >= 2")]
    InvalidBase(u32),
    #[error("digit {digit} out of range for base {base}")]
    DigitRange { digit: u32, base: u32 },
    #[error("base mismatch: {0} vs {1}")]
    BaseMismatch(u32, u32),
    #[error("mixed bases in point; a single common base is required here")]
    MixedBases,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point count {got} does not match required b^m = {expected}")]
    CardinalityMismatch { expected: u64, got: u64 },
    #[error("operation needs at least two points")]
    TooFewPoints,
    #[error("precision {precision} cannot represent {needed} digits exactly")]
    PrecisionTooSmall { precision: usize, needed: usize },
    #[error("bases must be pairwise coprime: gcd({a}, {b}) > 1")]
    NotCoprime { a: u32, b: u32 },
    #[error("value {0} lies outside [0, 1)")]
    OutOfUnitInterval(String),
    #[error("computation cap exceeded: needs {needed}, cap is {cap}")]
    CapExceeded { needed: u128, cap: u128 },
    #[error("unsupported dimension s = {0} for this operation")]
    UnsupportedDimension(usize),
    #[error("no construction available for base {b}, dimension {s}")]
    UnsupportedConstruction { b: u32, s: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
