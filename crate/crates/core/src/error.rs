use thiserror::Error;

use crate::singular_set::Point2;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("empty singular set")]
    EmptySet,
    #[error("invalid singular set: {0}")]
    InvalidSet(String),
    #[error("enumeration length must be at least 1")]
    ZeroCount,
    #[error("index {index} out of range (length {len})")]
    OutOfRange { index: usize, len: usize },
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("schedule not summable")]
    NotSummable,
    #[error("radius must be < 1/e (got {0})")]
    RadiusTooLarge(f64),
    #[error("ratio must be in (0,1) (got {0})")]
    RatioOutOfRange(f64),
    #[error("singular set reaches |x| = {reach} which is not inside the domain radius {radius}")]
    SetOutsideDomain { reach: f64, radius: f64 },
    #[error("evaluation at singular point p_{index}")]
    AtSingularPoint { index: usize },
    #[error("point ({x}, {y}) outside the domain ball of radius {radius}")]
    OutsideDomain { x: f64, y: f64, radius: f64 },
    #[error("point within {distance:e} of singular point p_{index} (exclusion radius {delta:e})")]
    TooClose { index: usize, distance: f64, delta: f64 },
    #[error("truncation index exceeds the cap {0}")]
    TruncationCap(usize),
    #[error("probe too coarse: p_{other} lies within the asymptotic-validity radius of p_{index}")]
    ProbeTooCoarse { index: usize, other: usize },
    #[error("t must be >= 1 (got {0})")]
    ProbeParameter(f64),
    #[error("non-finite integrand value at ({x}, {y})")]
    NonFinite { x: f64, y: f64 },
    #[error("non-integrable singularity suspected at ({x}, {y})")]
    NonIntegrable { x: f64, y: f64 },
    #[error("invalid quadrature policy: {0}")]
    InvalidPolicy(String),
    #[error("invalid test function: {0}")]
    InvalidTestFunction(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn non_finite(x: Point2) -> Self {
        Error::NonFinite { x: x.x, y: x.y }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
