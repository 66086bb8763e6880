use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("{name} = {value} is outside [{min}, {max}]")]
    Domain {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("{name} must be strictly positive and finite, got {value}")]
    NotPositive { name: &'static str, value: f64 },

    #[error("state is not normalized: squared norm {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("operator is not unitary: max |U^dag U - I| = {deviation:e}")]
    NotUnitary { deviation: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid strategy set: {0}")]
    StrategySet(String),

    #[error("could not parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
