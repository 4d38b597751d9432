use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The effective series parameter is too small for direct evaluation;
    /// the asymptotic forms in [`crate::limits`] apply instead.
    #[error("range error: effective parameter {alpha:e} is below {min:e}")]
    Range { alpha: f64, min: f64 },

    #[error("series did not reach tolerance {tol:e} within {max_terms} terms")]
    NotConverged { tol: f64, max_terms: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
