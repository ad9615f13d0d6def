use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("singular evaluation: {0}")]
    SingularEvaluation(String),
    #[error("shape mismatch: {0}")]
    ShapeError(String),
    #[error("degenerate metric at {point:?}")]
    DegenerateMetric { point: Vec<f64> },
    #[error("operator is not self-adjoint (residual {residual:e})")]
    NotSelfAdjoint { residual: f64 },
    #[error("form degree overflow: {0}")]
    DegreeError(String),
    #[error("two exterior derivative routes disagree by {deviation:e}")]
    CrossCheckMismatch { deviation: f64 },
    #[error("field is not Killing (residual {residual:e})")]
    NotKilling { residual: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("ambiguous spectrum: {0}")]
    AmbiguousSpectrum(String),
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
