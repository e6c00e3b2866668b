use thiserror::Error;

/// Error type shared by every module in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An exponential-cost operation was asked to go past its configured cap.
    #[error("{what} is limited to n <= {limit}, got n = {requested}")]
    LimitExceeded {
        what: &'static str,
        limit: usize,
        requested: usize,
    },

    /// A floating-point computation failed to reach the required accuracy.
    #[error("numerical failure: {message} (achieved residual {residual:e})")]
    Numerical { message: String, residual: f64 },

    #[error("unsupported case: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
