use thiserror::Error;

/// Errors shared across the library. Every failure carries enough context to
/// point at the offending input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("constant term {0} has no rational power {1} under the branch rule")]
    NonRationalRoot(String, String),
    #[error("inner series has nonzero constant term {0}")]
    CompositionAtNonzeroPoint(String),
    #[error("denominator vanishes at the origin")]
    ExpansionAtPole,
    #[error("division is not exact: {0}")]
    InexactDivision(String),
    #[error("parameter tuple has the wrong extension shape for this family")]
    WrongFamilyShape,
    #[error("lower parameter {0} is a nonpositive integer")]
    GammaPole(String),
    #[error("unknown identity tag {0}")]
    UnknownIdentity(String),
    #[error("unknown catalog tag {0}")]
    UnknownTag(String),
    #[error("unsupported level {0}")]
    UnsupportedLevel(u32),
    #[error("residual nonzero, first failing exponent {0}")]
    ResidualNonzero(i64),
    #[error("Newton branch not uniquely determined at order {0}")]
    SingularBranch(i64),
    #[error("series is constant to truncation order")]
    ZeroDerivative,
    #[error("series is not involutive, first failing exponent {0}")]
    NotInvolutive(i64),
    #[error("pullback does not vanish at the origin: num(0)^2 != den(0)^3")]
    PullbackNotVanishing,
    #[error("invalid monomial map: {0}")]
    InvalidMonomialMap(String),
    #[error("sampling ratio is not constant: {0}")]
    NonconstantRatio(String),
    #[error("composition identity fails: {0}")]
    CompositionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("pullback series invariance violated: {0}")]
    InvarianceViolation(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
