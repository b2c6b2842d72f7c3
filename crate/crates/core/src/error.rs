use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("index {index:?} is closer than {margin} cells to the boundary of a {dims:?} grid")]
    Range {
        index: [usize; 3],
        dims: [usize; 3],
        margin: usize,
    },

    #[error("singular gauge: |alpha| = {alpha:e} is below {threshold:e}")]
    SingularGauge { alpha: f64, threshold: f64 },

    #[error("solution diverged (|w| > {limit}) at r = {radius}")]
    Divergence { radius: f64, limit: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("numerical instability (non-finite value) at t = {time}")]
    Instability { time: f64 },

    #[error("profile is not regular at the origin: w(0) = {w0}")]
    Regularity { w0: f64 },

    #[error("grid too small: {dims:?}, need at least {min} cells per axis")]
    GridTooSmall { dims: [usize; 3], min: usize },

    #[error("non-finite charge density at {point:?}")]
    NonFinite { point: [f64; 3] },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
