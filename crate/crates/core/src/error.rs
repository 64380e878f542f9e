use std::path::PathBuf;

use num_complex::Complex64;

use crate::dynamics::Trajectory;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unknown model identifier `{0}`")]
    UnknownModel(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported for model `{model}`: {what}")]
    Unsupported { model: String, what: String },

    #[error("evaluation at tau = {tau} lies within {distance:e} of a pole")]
    Domain { tau: Complex64, distance: f64 },

    #[error("quadrature did not converge (estimate {estimate:e}, error {error:e})")]
    Accuracy { estimate: f64, error: f64 },

    #[error("contour quadrature did not converge: {coarse} vs {fine}")]
    ContourAccuracy { coarse: Complex64, fine: Complex64 },

    #[error("contour from 0 to {tau} passes within {distance:e} of a pole")]
    Contour { tau: Complex64, distance: f64 },

    #[error("integrator exceeded {steps} steps before reaching the end of the window")]
    Convergence {
        steps: usize,
        partial: Box<Trajectory>,
    },

    #[error("non-finite state encountered at tau = {tau}")]
    NonFinite { tau: f64 },

    #[error("detuning and coupling vanish simultaneously at tau = {tau}")]
    Degenerate { tau: f64 },

    #[error("quasienergy vanishes at tau = {tau}")]
    Singular { tau: Complex64 },

    #[error("zero refinement failed after {iterations} iterations (last iterate {last})")]
    Refinement { last: Complex64, iterations: usize },

    #[error("ambiguous nearest transition point; candidates: {candidates:?}")]
    Ambiguous { candidates: Vec<Complex64> },

    #[error("residue limit unstable under radius halving: {coarse} vs {fine}")]
    LimitUnstable { coarse: Complex64, fine: Complex64 },

    #[error("invalid sweep definition: {0}")]
    Spec(String),

    #[error("unsupported figure id {0} (expected 1, 3, 4 or 5)")]
    UnknownFigure(u32),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: malformed csv: {message}")]
    Csv { path: PathBuf, message: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::UnknownModel(_)
            | Error::Parameter(_)
            | Error::Spec(_)
            | Error::UnknownFigure(_)
            | Error::Precondition(_)
            | Error::Unsupported { .. } => 2,
            Error::Io { .. } | Error::Csv { .. } => 4,
            _ => 3,
        }
    }
}
