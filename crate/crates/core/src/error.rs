use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("amplitude count {0} is not a power of two (or is below 2)")]
    NotPowerOfTwo(usize),

    #[error("state is not normalized: |ψ|² = {0}")]
    NotNormalized(f64),

    #[error("angle θ_{index} = {value} is outside [{min}, {max}]")]
    AngleOutOfRange {
        index: usize,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("invalid marked set: {0}")]
    InvalidMarkedSet(String),

    #[error("{name} = {value} is out of range ({expected})")]
    OutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("invalid optimizer options: {0}")]
    InvalidOptions(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
