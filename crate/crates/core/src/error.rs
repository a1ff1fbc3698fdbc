//! Error type shared by the whole crate.

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Matrix or vector shapes do not line up.
    #[error("dimension mismatch in {context}: expected {expected:?}, got {got:?}")]
    Dimension {
        context: &'static str,
        expected: (usize, usize),
        got: (usize, usize),
    },

    /// A scalar argument is outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A user or target index is out of range.
    #[error("{what} index {index} out of range (count {count})")]
    Index {
        what: &'static str,
        index: usize,
        count: usize,
    },

    /// Configuration rejected; one message per offending field.
    #[error("invalid configuration:\n{}", .0.join("\n"))]
    Config(Vec<String>),

    /// NaN/Inf encountered inside an iterative solve.
    #[error("numeric failure at {context} (iteration {iteration})")]
    Numeric { context: String, iteration: usize },

    /// A matrix that must be inverted is singular or too ill-conditioned.
    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 config, 3 numeric, 4 i/o.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Domain(_) => 2,
            Error::Json(_) => 2,
            Error::Numeric { .. } | Error::Singular(_) => 3,
            Error::Io(_) => 4,
            Error::Dimension { .. } | Error::Index { .. } => 2,
        }
    }
}
