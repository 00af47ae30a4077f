use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum RydError {
    /// Invalid physical input (selection rule violated, nonsensical geometry, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Bad configuration data (unknown species, missing defect entry, unparsable state).
    #[error("configuration error: {0}")]
    Config(String),

    /// A numerical procedure failed to converge or produced garbage.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// A fit was requested over data that does not support it (e.g. an avoided
    /// crossing inside a polarizability fit window).
    #[error("fit quality error: {0}")]
    FitQuality(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, RydError>;
