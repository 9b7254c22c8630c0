use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(
        "invalid parameters alpha={alpha}, beta={beta}: need alpha > 0, beta > 0, alpha*beta > 1"
    )]
    InvalidParams { alpha: f64, beta: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error(
        "inverse iteration did not converge after {iterations} iterations (residual {residual:e})"
    )]
    NoConvergence { iterations: usize, residual: f64 },

    #[error(
        "no certified enclosure of width <= {width_goal:e} for index {index} with N <= {n_max}"
    )]
    NotCertifiable {
        index: usize,
        width_goal: f64,
        n_max: usize,
    },

    #[error("a-recursion check failed at index {index} (value {value})")]
    RecursionCheckFailed { index: usize, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
