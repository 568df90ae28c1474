use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid mismatch: {left} points vs {right} points")]
    GridMismatch { left: usize, right: usize },
    #[error("window is identically zero")]
    ZeroWindow,
    #[error("grid size {n} exceeds the cap of {cap} for {what}")]
    CapExceeded { n: usize, cap: usize, what: &'static str },
    #[error("tau = {0} is outside [0, 1]")]
    TauOutOfRange(f64),
    #[error("invalid exponent: {0}")]
    InvalidExponent(String),
    #[error("misordered exponents: {0}")]
    MisorderedExponents(String),
    #[error("shift {0} is not an integer multiple of the grid spacing")]
    OffGridShift(f64),
    #[error("non-finite sample at index {0}")]
    NonFinite(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("unknown ensemble kind: {0}")]
    UnknownKind(String),
    #[error("empty ensemble")]
    EmptyEnsemble,
    #[error("zero-norm input: {0}")]
    ZeroNorm(&'static str),
    #[error("inadmissible exponents: {0}")]
    Inadmissible(String),
    #[error("norm order mismatch: {0}")]
    OrderMismatch(String),
    #[error("invalid weight: {0}")]
    InvalidWeight(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("I/O: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
