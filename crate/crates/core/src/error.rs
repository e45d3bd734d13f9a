use thiserror::Error;

/// Errors raised by the simulation core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    /// An input was outside an operation's domain (non-finite value,
    /// coincident points, non-positive time step, empty agent set, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A configuration invariant does not hold.
    #[error("invalid configuration: {field}: {reason}")]
    InvalidConfig { field: &'static str, reason: String },

    /// Rejection sampling could not place every agent.
    #[error("infeasible spawn: placed {placed} of {requested} agents before {attempts} consecutive rejections")]
    InfeasibleSpawn {
        placed: usize,
        requested: usize,
        attempts: u32,
    },

    #[error("thread pool: {0}")]
    ThreadPool(String),
}

pub type Result<T> = std::result::Result<T, SimError>;

pub(crate) fn domain(msg: impl Into<String>) -> SimError {
    SimError::Domain(msg.into())
}
