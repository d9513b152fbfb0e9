use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// `(p, q)` does not describe a minimal model.
    #[error("invalid model (p={p}, q={q}): {reason}")]
    InvalidModel { p: i64, q: i64, reason: String },

    /// A Kac label outside `0 < m < p`, `0 < n < q`.
    #[error("Kac label ({m},{n}) out of range for the ({p},{q}) model: need 0 < m < {p} and 0 < n < {q}")]
    LabelOutOfRange { p: i64, q: i64, m: i64, n: i64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The request exceeds a fixed size budget.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A partition or labeling violates a structural requirement.
    #[error("structural error: {0}")]
    Structural(String),

    /// Two objects built for different models were combined.
    #[error("model mismatch: ({0},{1}) vs ({2},{3})")]
    ModelMismatch(i64, i64, i64, i64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
