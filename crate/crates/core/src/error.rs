use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("degenerate contour: root of modulus {root_modulus} lies on the circle |z| = {radius}")]
    DegenerateContour { radius: f64, root_modulus: f64 },

    #[error("inadmissible window ({r_inner}, {r_outer}): roots with moduli {moduli:?} lie inside")]
    InadmissibleWindow {
        r_inner: f64,
        r_outer: f64,
        moduli: Vec<f64>,
    },

    #[error("empty admissible window: {0}")]
    EmptyWindow(String),

    #[error("inadmissible parameters: {0}")]
    InadmissibleParameters(String),

    #[error("unsupported data: {0}")]
    UnsupportedData(String),

    #[error("parity undetermined: F± is neither a square nor z times a square")]
    ParityUndetermined,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("multivalued height: z^-1 coefficient of phi3 has imaginary part {0:e}")]
    MultivaluedHeight(f64),

    #[error("multivalued immersion: coordinate {coordinate} has log coefficient with imaginary part {imag:e}")]
    MultivaluedImmersion { coordinate: usize, imag: f64 },

    #[error("height {height} is not attained on the ray at theta = {theta}")]
    HeightOutOfRange { height: f64, theta: f64 },

    #[error("height is not monotone along the ray at theta = {theta}; surface too thick for graph tracing")]
    NonMonotoneRay { theta: f64 },

    #[error("root finder did not converge: {0}")]
    NoConvergence(String),

    #[error("empty slab: {0}")]
    EmptySlab(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of the numerical machinery itself (root finding,
    /// level tracing) as opposed to invalid input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::DegenerateContour { .. }
                | Error::HeightOutOfRange { .. }
                | Error::NonMonotoneRay { .. }
                | Error::NoConvergence(_)
        )
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
