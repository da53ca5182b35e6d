use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("kernel evaluated at negative time t = {0}")]
    NegativeTime(f64),

    #[error("Laplace transform evaluated on the kernel rate {rate} (singular)")]
    SingularEvaluation { rate: num_complex::Complex64 },

    #[error("poles {a} and {b} are degenerate (separation {separation:.3e}); use a time-domain solver")]
    DegeneratePoles {
        a: num_complex::Complex64,
        b: num_complex::Complex64,
        separation: f64,
    },

    #[error("pole collision during sweep at {parameter} = {value}")]
    DegenerateSweep { parameter: &'static str, value: f64 },

    #[error("step dt = {dt} violates the resolution guard; use dt <= {max_dt:.6e}")]
    Resolution { dt: f64, max_dt: f64 },

    #[error("time grids differ: {0}")]
    GridMismatch(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }

    /// True for failures caused by repeated poles, which the CLI maps to its own exit code.
    pub fn is_degeneracy(&self) -> bool {
        matches!(
            self,
            Error::DegeneratePoles { .. } | Error::DegenerateSweep { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
