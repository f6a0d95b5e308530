use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite sample at index {index}")]
    NonFinite { index: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("spectrum is not two-sided: {0}")]
    NotTwoSided(String),

    #[error(
        "spectrum is not Hermitian: worst bin {index} (omega = {omega:.6e}) \
         deviates by {deviation:.3e} relative"
    )]
    NotHermitian {
        index: usize,
        omega: f64,
        deviation: f64,
    },

    #[error("zero-frequency sample has significant imaginary part ({0:.3e} of peak magnitude)")]
    ComplexAtZero(f64),

    #[error("lower half-plane requested (y = {0:.6e} < 0)")]
    NegativeY(f64),

    #[error("probe frequency {probe:.6e} outside sampled band (|omega| <= {band:.6e})")]
    ProbeOutsideBand { probe: f64, band: f64 },

    #[error("subtracted function is not square integrable: {0}")]
    NotSquareIntegrable(String),

    #[error("invalid medium: {0}")]
    InvalidMedium(String),

    #[error(
        "frequency {omega:.6e} outside tabulated range [{min:.6e}, {max:.6e}]; \
         interpolation only inside the covered range"
    )]
    OutsideTable { omega: f64, min: f64, max: f64 },

    #[error("square-root branch ambiguity at Re n = 0; medium outside modeled class")]
    BranchAmbiguity,

    #[error("omega = 0 not allowed: {0}")]
    ZeroFrequency(String),

    #[error(
        "wraparound guard violated: {0}; enlarge the grid (zero padding of at least \
         the signal support plus the slab delay is required)"
    )]
    Wraparound(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error at {path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
