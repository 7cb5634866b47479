use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid range: lo ({lo}) must be strictly less than hi ({hi})")]
    InvalidRange { lo: f64, hi: f64 },

    #[error("invalid count: cannot draw {k} distinct items from {n}")]
    InvalidCount { n: usize, k: usize },

    #[error("dimension mismatch in {op}: expected {expected}, got {got}")]
    Dimension {
        op: &'static str,
        expected: String,
        got: String,
    },

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("degenerate spectrum: estimated spectral radius {radius:e} cannot be rescaled")]
    DegenerateSpectrum { radius: f64 },

    #[error("spectral radius estimate did not converge after {iterations} iterations (best {estimate})")]
    RadiusNotConverged { estimate: f64, iterations: usize },

    #[error("insufficient samples: need at least {needed}, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("degenerate trajectory: state covariance has no positive eigenvalue")]
    DegenerateTrajectory,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("cannot summarize an empty record set")]
    EmptySummary,

    #[error("records do not form a rectangular (chi_r, chi_i) grid: {0}")]
    GridShape(String),

    #[error("malformed CSV at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn dimension(
        op: &'static str,
        expected: impl ToString,
        got: impl ToString,
    ) -> Self {
        Error::Dimension {
            op,
            expected: expected.to_string(),
            got: got.to_string(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures rooted in the numerics rather than in the caller's input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Numeric(_)
                | Error::DegenerateSpectrum { .. }
                | Error::RadiusNotConverged { .. }
                | Error::DegenerateTrajectory
        )
    }
}
