//! Error type shared by every module of the crate.

use thiserror::Error;

/// Broad error classes, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Precondition,
    Precision,
    CheckFailure,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid field descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("descriptor mismatch: {0} vs {1}")]
    DescriptorMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("singular input: {0}")]
    SingularInput(String),
    #[error("matrix not invertible at working precision")]
    NotInvertible,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("automorphism is not contractive (characteristic valuations {0})")]
    NotContractive(String),
    #[error("scalar does not contract: valuation {0} <= 0")]
    NotContracting(String),
    #[error("not a Lie algebra automorphism on pair ({i}, {j}): residual {residual}")]
    NotAutomorphism { i: usize, j: usize, residual: String },
    #[error("Jacobi identity fails on ({i}, {j}, {k}): residual {residual}")]
    JacobiViolation { i: usize, j: usize, k: usize, residual: String },
    #[error("invalid Lie algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid gradation: {0}")]
    InvalidGradation(String),
    #[error("grading violation: {0}")]
    GradingViolation(String),
    #[error("centrality violation: {0}")]
    CentralityViolation(String),
    #[error("Lie algebra is not nilpotent")]
    NotNilpotent,
    #[error("group tag mismatch: {0}")]
    TagMismatch(String),
    #[error("BCH coefficient denominator {den} is divisible by p = {p}")]
    DenominatorNotUnit { den: String, p: u32 },
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("element is not torsion within exponent cap {0}")]
    NotTorsion(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("ball is not invariant: {0}")]
    NotInvariant(String),
    #[error("map does not intertwine: {0}")]
    NotIntertwining(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            Parse { .. } => ErrorClass::Parse,
            PrecisionExhausted(_) => ErrorClass::Precision,
            GradingViolation(_) | CentralityViolation(_) | NotIntertwining(_) => {
                ErrorClass::CheckFailure
            }
            _ => ErrorClass::Precondition,
        }
    }

    /// Short variant name, as shown in reports.
    pub fn name(&self) -> &'static str {
        use Error::*;
        match self {
            Parse { .. } => "ParseError",
            InvalidDescriptor(_) => "InvalidDescriptor",
            DescriptorMismatch(..) => "DescriptorMismatch",
            DivisionByZero => "DivisionByZero",
            PrecisionExhausted(_) => "PrecisionExhausted",
            SingularInput(_) => "SingularInput",
            NotInvertible => "NotInvertible",
            DimensionMismatch(_) => "DimensionMismatch",
            NotContractive(_) => "NotContractive",
            NotContracting(_) => "NotContracting",
            NotAutomorphism { .. } => "NotAutomorphism",
            JacobiViolation { .. } => "JacobiViolation",
            InvalidAlgebra(_) => "InvalidAlgebra",
            InvalidGradation(_) => "InvalidGradation",
            GradingViolation(_) => "GradingViolation",
            CentralityViolation(_) => "CentralityViolation",
            NotNilpotent => "NotNilpotent",
            TagMismatch(_) => "TagMismatch",
            DenominatorNotUnit { .. } => "DenominatorNotUnit",
            UnsupportedField(_) => "UnsupportedField",
            NotTorsion(_) => "NotTorsion",
            WindowTooSmall(_) => "WindowTooSmall",
            NotInvariant(_) => "NotInvariant",
            NotIntertwining(_) => "NotIntertwining",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
