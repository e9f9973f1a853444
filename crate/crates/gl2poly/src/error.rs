//! Error type shared by every module of the crate.

use thiserror::Error;

/// All recoverable failure modes of the library.
///
/// Mixing values from two different [`crate::ff::FieldSpec`]s is a logic
/// error, not a recoverable condition: arithmetic on mismatched fields
/// panics with a descriptive message instead of returning a variant here.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("modulus has degree {got}, expected {want}")]
    DegreeMismatch { want: usize, got: usize },
    #[error("field size {0} exceeds the supported limit {1}")]
    FieldTooLarge(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("multiplicative order of zero is undefined")]
    ZeroElement,
    #[error("scale factor must be nonzero")]
    ZeroScalar,
    #[error("zero polynomial has no monic normalization")]
    ZeroPolynomial,
    #[error("operation requires a nonconstant polynomial")]
    ConstantPolynomial,
    #[error("operation requires degree at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is reducible where an irreducible one is required")]
    ReducibleInput,
    #[error("enumeration size {needed} exceeds cap {cap}")]
    CapExceeded { needed: u128, cap: u64 },
    #[error("matrix is singular")]
    Singular,
    #[error("generators span only the zero subspace")]
    ZeroSpan,
    #[error("polynomial is not invariant under the requested group")]
    NotInvariant,
    #[error("scalar must differ from 0 and 1")]
    DegenerateScalar,
    #[error("generated group has order {0}, not a power of p = {1}")]
    NotPGroup(u64, u64),
    #[error("the trivial group is outside the counting theorems; give a nonidentity generator")]
    TrivialGroup,
    #[error("group elements share no common fixed line")]
    NoCommonFixedLine,
    #[error("polynomial is not fixed by the given subgroup")]
    NotFixed,
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
