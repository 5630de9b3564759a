use crate::solver::SolveReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A caller violated a documented precondition.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// The iteration budget ran out; the best iterate is attached.
    #[error("{method} did not converge after {iterations} iterations (residual {residual:e})", method = .0.method, iterations = .0.iterations, residual = .0.max_residual())]
    NotConverged(Box<SolveReport>),

    /// No enumerated policy reproduced the solution within tolerance.
    #[error("no policy candidate within tolerance (best residual {residual:e})", residual = .0.max_residual())]
    Inconsistent(Box<SolveReport>),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("malformed instance JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 2,
            _ => 1,
        }
    }
}
