use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The digamma function has poles at the non-positive integers.
    #[error("digamma pole at x = {0}")]
    Pole(f64),

    /// The exponential integral Ei has a logarithmic singularity at zero.
    #[error("Ei(x) is singular at x = 0")]
    Singular,

    /// A series or adaptive quadrature exhausted its budget before reaching
    /// the requested tolerance.
    #[error("failed to converge: {0}")]
    Convergence(String),

    /// Too many simulated paths hit the step cap without being absorbed.
    #[error("{unfinished} of {total} paths did not terminate within the step cap")]
    NonTermination { unfinished: usize, total: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn require_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be finite, got {x}")))
    }
}
