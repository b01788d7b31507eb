//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("unknown generator index {index} (group has {count} generators)")]
    UnknownGenerator { index: i64, count: usize },

    #[error("rewriting exceeded the step budget of {budget}; rule set may not terminate")]
    RuleLoopGuard { budget: usize },

    #[error("operands belong to different group backends")]
    BackendMismatch,

    #[error("enumeration exceeded the element cap of {cap}")]
    SizeCapExceeded { cap: usize },

    #[error("group is not finite under the element cap of {cap}")]
    NotFiniteUnderCap { cap: usize },

    #[error("unknown quotient homomorphism `{name}`")]
    UnknownHom { name: String },

    #[error("invalid group descriptor: {reason}")]
    InvalidDescriptor { reason: String },

    #[error("matrix dimension mismatch: {left} vs {right}")]
    DimMismatch { left: String, right: String },

    #[error("weighted sum-of-squares term has nonpositive weight {weight}")]
    NonpositiveWeight { weight: String },

    #[error("parse error: {reason}")]
    ParseError { reason: String },

    #[error("orbit `{orbit}` in degree {degree} is missing face index {t} (or lists it twice)")]
    MissingFace { degree: usize, orbit: String, t: usize },

    #[error("face record of orbit `{orbit}` references unknown orbit `{target}` in degree {degree}")]
    BadOrbitRef { degree: usize, orbit: String, target: String },

    #[error("chain condition violated: (D_{n} · D_{})[{row}, {col}] = {entry}", n + 1)]
    ChainConditionViolated { n: usize, row: String, col: String, entry: String },

    #[error("degree {degree} out of range (complex has data for degrees 0..={top})")]
    DegreeOutOfRange { degree: usize, top: usize },

    #[error("operator pair is not a chain complex: product is nonzero at ({row}, {col})")]
    OperatorChainBroken { row: usize, col: usize },

    #[error("representation `{name}` is not exact; exact rational mode is required here")]
    FloatModeUnsupported { name: String },

    #[error("invalid representation: {reason}")]
    InvalidRep { reason: String },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("Gram matrix is not positive semidefinite")]
    NotPsd,

    #[error("support basis cannot express {count} coefficient(s) of the target; first uncovered: position ({p}, {q}), element {elem}")]
    SupportTooSmall { count: usize, p: usize, q: usize, elem: String },

    #[error("malformed certificate: {reason}")]
    MalformedCert { reason: String },
}
