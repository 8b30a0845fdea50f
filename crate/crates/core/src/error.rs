use thiserror::Error;

/// Errors produced by curve handling, the conformal engine, the extension
/// pipeline and the audits.
///
/// Numeric diagnostics are carried as `f64` regardless of the scalar type the
/// failing computation ran in.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("point ({re}, {im}) is {distance:e} from the curve, tolerance {tol:e}")]
    OffCurve {
        re: f64,
        im: f64,
        distance: f64,
        tol: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("conformal engine accuracy: {message} (residual {residual:e})")]
    EngineAccuracy { message: String, residual: f64 },

    #[error("quadrature did not converge on [{a}, {b}] (error estimate {estimate:e})")]
    Quadrature { a: f64, b: f64, estimate: f64 },

    #[error("inversion of the extension failed for target ({re}, {im}); tried {} starts", trace.len())]
    Inversion {
        re: f64,
        im: f64,
        /// Best residual reached from each start.
        trace: Vec<f64>,
    },

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of the numerical machinery, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::EngineAccuracy { .. }
                | Error::Quadrature { .. }
                | Error::Inversion { .. }
                | Error::OffCurve { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
