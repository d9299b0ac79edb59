use thiserror::Error;

/// Errors raised across barcode handling, persistence and vectorization.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid interval: birth {birth} > death {death}")]
    InvalidInterval { birth: f64, death: f64 },

    #[error("invalid clamp: clamp value {clamp} is below finite death {death}")]
    InvalidClamp { clamp: f64, death: f64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("empty barcode")]
    EmptyBarcode,

    #[error("degenerate range [{lo}, {hi}]")]
    DegenerateRange { lo: f64, hi: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("invalid complex structure: {0}")]
    Structure(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("method `{0}` requires a fitted model")]
    ModelRequired(String),

    #[error("ATOL requires b ≥ 2")]
    AtolTooFewCenters,

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
