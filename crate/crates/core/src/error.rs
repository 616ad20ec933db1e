use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("not tame: {0}")]
    NotTame(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("argument {s} is within {radius:e} of the pole at {pole} (residue {residue})")]
    NearPole {
        s: String,
        pole: usize,
        residue: String,
        radius: f64,
    },
    #[error("no convergence after {terms} terms (last change {last_change:e})")]
    SlowConvergence { terms: usize, last_change: f64 },
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("inconsistent Bernoulli data: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn not_tame(msg: impl Into<String>) -> Self {
        Error::NotTame(msg.into())
    }

    pub fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    /// True for failures of the input rather than of the numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NotTame(_) | Error::InvalidInput(_) | Error::Unsupported(_) | Error::Inconsistent(_)
        )
    }
}
