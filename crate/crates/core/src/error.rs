use thiserror::Error;

/// Errors raised by the NWTE library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NwteError {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("argument `{name}` = {value} outside the domain: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("conditioning event has probability {probability:e} (below 1e-300)")]
    NullEvent { probability: f64 },

    #[error("series did not reach tolerance {tolerance:e} within {max_terms} terms (last row magnitude {last_row:e})")]
    TruncationFailure {
        max_terms: usize,
        tolerance: f64,
        last_row: f64,
    },

    #[error("quadrature did not converge: estimated error {error:e} exceeds tolerance {tolerance:e}")]
    Quadrature { error: f64, tolerance: f64 },

    #[error("log-likelihood is not finite (observation {index} = {value} has zero density)")]
    NonFiniteLikelihood { index: usize, value: f64 },

    #[error("probability-integral transform z[{index}] = {value} is 0 or 1")]
    DegenerateProbability { index: usize, value: f64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: value {value} is not strictly positive")]
    NonPositive { line: usize, value: f64 },

    #[error("need at least {required} observations, got {got}")]
    InsufficientData { required: usize, got: usize },

    #[error("dataset `{name}` failed the descriptive checksum: {field} = {got}, expected {expected}")]
    Checksum {
        name: String,
        field: &'static str,
        got: f64,
        expected: f64,
    },

    #[error("dataset `{0}` is not available")]
    MissingDataset(String),

    #[error("unknown model family `{0}`")]
    UnknownFamily(String),

    #[error("model `{family}` expects {expected} parameters, got {got}")]
    ParameterCount {
        family: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for NwteError {
    fn from(e: std::io::Error) -> Self {
        NwteError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, NwteError>;
