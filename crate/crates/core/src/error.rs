use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bit string length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("bit strings are limited to {max} bits, got {got}")]
    TooManyBits { got: usize, max: usize },
    #[error("degenerate cost range: c_min = c_max = {0}")]
    DegenerateRange(f64),
    #[error("cost {cost} outside [{c_min}, {c_max}]")]
    CostOutOfRange { cost: f64, c_min: f64, c_max: f64 },
    #[error("invalid bounds: lower {lower} must be strictly below upper {upper}")]
    InvalidBounds { lower: f64, upper: f64 },
    #[error("Lehmer index {index} out of range (must be below 2^{bits})")]
    IndexOutOfRange { index: u64, bits: usize },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("disconnected cost graph: {0}")]
    Disconnected(String),
    #[error("{what} needs {got} qubits, cap is {cap}")]
    SizeCap { what: &'static str, got: usize, cap: usize },
    #[error("rescaled cost must lie in (0, 1], got {0}")]
    FilterDomain(f64),
    #[error("graph has {0} nodes; exhaustive cycle search is limited to 20, pass an explicit cycle instead")]
    GraphTooLarge(usize),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
