use thiserror::Error;

/// Errors surfaced by construction, evaluation and linear-algebra routines.
#[derive(Debug, Error)]
pub enum FmiError {
    /// An operation that requires a square matrix received a rectangular one.
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    /// Two operands had incompatible shapes.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A measure failed validation (weights, atom placement, distinctness).
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    /// Problem data failed validation (node placement, moment count, ...).
    #[error("invalid problem data: {0}")]
    InvalidData(String),

    /// An evaluation point violates a precondition (on a singularity, on the
    /// boundary, at a node, ...).
    #[error("evaluation point rejected: {0}")]
    BadPoint(String),

    /// A required matrix inverse does not exist or is numerically unusable.
    #[error("singular matrix: {0}")]
    Singular(String),

    /// Quadrature asked for on data whose leading moment block is not
    /// positive definite; carries the offending minimum eigenvalue.
    #[error("leading moment block not positive definite (min eigenvalue {0:.3e})")]
    NotPositiveDefinite(f64),

    /// Serialization / deserialization failure.
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
