use thiserror::Error;

/// Everything that can go wrong while evaluating scattering quantities.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge after {terms} terms (last relative term {last:e})")]
    Convergence { terms: usize, last: f64 },

    #[error("branch error: {0}")]
    Branch(String),

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("singular matching system (pivot {pivot:e}, matrix norm {norm:e})")]
    SingularSystem { pivot: f64, norm: f64 },

    #[error("step too coarse: |R + T - 1| = {residual:e} at step {step:e}")]
    Step { residual: f64, step: f64 },

    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("{failed} of {total} sweep points failed")]
    TooManyFailures { failed: usize, total: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn is_degenerate(&self) -> bool {
        matches!(self, Error::Degenerate(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
