use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("bad prime {0}: {1}")]
    BadPrime(u64, String),
    #[error("algebra {0} is not associative")]
    NotAssociative(String),
    #[error("invalid superinvolution: {0}")]
    InvalidSuperinvolution(String),
    #[error("element is not an even idempotent")]
    NotIdempotent,
    #[error("left multiplication has eigenvalues outside {{0, 1/2, 1}}")]
    NotPeirceDecomposable,
    #[error("algebra {0} has no matrix realization")]
    NoRealization(String),
    #[error("ZeroParameter: parameter t must be nonzero")]
    ZeroParameter,
    #[error("EmptyForm: superform space must have positive dimension")]
    EmptyForm,
    #[error("TooLarge: {0}")]
    TooLarge(String),
    #[error("AlreadyUnital: {0} already has a unit")]
    AlreadyUnital(String),
    #[error("DegenerateForm: bilinear form is singular")]
    DegenerateForm,
    #[error("BadParameter: {0}")]
    BadParameter(String),
    #[error("NotASubalgebra: {0}")]
    NotASubalgebra(String),
    #[error("NotAnIdeal: subspace is not a graded ideal")]
    NotAnIdeal,
    #[error("NotNilpotent: powers stabilized at dimension {0}")]
    NotNilpotent(usize),
    #[error("BadBlocks: {0}")]
    BadBlocks(String),
    #[error("SideConditionViolated: {0}")]
    SideConditionViolated(String),
    #[error("unknown algebra spec {0:?}")]
    UnknownSpec(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
