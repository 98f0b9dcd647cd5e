use thiserror::Error;

/// Errors surfaced by the manifold engine.
#[derive(Debug, Error)]
pub enum QhmError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid or parameter mismatch between operands: {0}")]
    Mismatch(String),

    #[error("non-finite input: {0}")]
    NonFinite(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("power iteration did not converge (best estimate {best})")]
    NoConvergence { best: f64 },

    #[error("optimizer failed to meet endpoint constraint (best gap {gap})")]
    EndpointGap { gap: f64 },

    #[error("malformed file, field `{field}`: {reason}")]
    Malformed { field: String, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<V> = std::result::Result<V, QhmError>;
