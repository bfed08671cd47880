use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("elements belong to different rings ({0} vs {1})")]
    RingMismatch(String, String),
    #[error("invalid ring description: {0}")]
    InvalidRing(String),
    #[error("degree {0} does not lie in the grading monoid")]
    DegreeOutsideMonoid(String),
    #[error("coefficient {0} is not an integer but the base domain is Z")]
    NonIntegralCoefficient(String),
    #[error("operation requires a nonzero {0}")]
    Zero(&'static str),
    #[error("element is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("division is not exact")]
    InexactDivision,
    #[error("star operation `{star}` is unavailable on ring `{ring}`: {reason}")]
    IncompatibleStar { star: String, ring: String, reason: String },
    #[error("Dedekind-Mertens exponent not found for m <= {cap}")]
    CapExceeded { cap: u32, trace: Vec<String> },
    #[error("empty {0}")]
    Empty(&'static str),
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("unknown generator name `{0}`")]
    UnknownName(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
