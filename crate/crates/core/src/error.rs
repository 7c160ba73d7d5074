use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not diagonal")]
    NotDiagonal,

    #[error("matrix is not traceless (trace = {0})")]
    NotTraceless(f64),

    #[error("generator index out of range for sl_{m}: {what}")]
    IndexOutOfRange { m: usize, what: String },

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("representation dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: u128, cap: usize },

    #[error("group element is not unimodular (det = {0})")]
    NotUnimodular(String),

    #[error("Gauss decomposition undefined: leading principal minor {index} vanishes")]
    DecompositionOnClosedSet { index: usize },

    #[error("jet order exhausted: cannot apply a first-order operator to an order-0 jet")]
    OrderExhausted,

    #[error("chart violation: {0}")]
    Chart(String),

    #[error("zero vector has no projective class")]
    ZeroVector,

    #[error("objects belong to different algebras or weights: {0}")]
    SpecMismatch(String),

    #[error("insufficient interpolation grid: {0}")]
    InsufficientGrid(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
