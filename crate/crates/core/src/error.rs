use thiserror::Error;

pub type Result<T> = std::result::Result<T, QgError>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum QgError {
    /// Tensors or vectors whose shapes do not fit together.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("elements belong to different quantum groups")]
    OwnerMismatch,

    #[error("dimension mismatch: expected {expected}, got {got} ({context})")]
    DimensionMismatch {
        expected: usize,
        got: usize,
        context: &'static str,
    },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("Haar state is not faithful (smallest Gram eigenvalue {min_eigenvalue:e})")]
    NotFaithful { min_eigenvalue: f64 },

    #[error("block separation failed, smallest ambiguous eigenvalue gap {gap:e}")]
    NumericalDegeneracy { gap: f64 },

    #[error("corepresentation is not invertible (sigma_min/sigma_max = {ratio:e})")]
    NotInvertible { ratio: f64 },

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),

    #[error("no unitary corepresentation of dimension {0} is available")]
    NoUnitaryCorep(usize),

    #[error("unknown variant `{0}`")]
    UnknownVariant(String),

    #[error("Fock space dimension {dim} exceeds the budget {cap}")]
    Budget { dim: usize, cap: usize },

    #[error("domain word length {domain_len} leaves no exact action zone below the cap {max_len}")]
    Exactness { domain_len: usize, max_len: usize },

    #[error("element of factor {factor} is not centred (state value {value:e})")]
    NotCentred { factor: usize, value: f64 },

    #[error("index {index} out of range (< {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("iteration did not converge after {iterations} steps (last change {last_change:e}, estimate {estimate})")]
    NoConvergence {
        iterations: usize,
        last_change: f64,
        estimate: f64,
    },

    #[error("schema error at `{field}`: {message}")]
    Schema { field: String, message: String },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for QgError {
    fn from(e: std::io::Error) -> Self {
        QgError::Io(e.to_string())
    }
}
