use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("invalid quality model: {0}")]
    InvalidQualityModel(String),

    #[error("invalid discount: {0}")]
    InvalidDiscount(String),

    #[error("invalid scale {0}: must be positive and finite")]
    InvalidScale(f64),

    #[error("invalid bimatrix: {0}")]
    InvalidBimatrix(String),

    #[error("bimatrix parse error at line {line}: {message}")]
    BimatrixParse { line: usize, message: String },

    #[error("strategy index {index} out of range for {count} strategies")]
    StrategyOutOfRange { index: usize, count: usize },

    #[error("game is {rows}x{cols}; support enumeration is limited to {limit}x{limit}")]
    SizeLimit { rows: usize, cols: usize, limit: usize },

    #[error("invalid network configuration: {0}")]
    InvalidNetwork(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid experiment configuration: {0}")]
    InvalidConfig(String),

    #[error("empty window: {0}")]
    EmptyWindow(&'static str),

    #[error("record csv line {line}: {message}")]
    Csv { line: usize, message: String },

    #[error("checkpoint: {0}")]
    Checkpoint(String),
}
