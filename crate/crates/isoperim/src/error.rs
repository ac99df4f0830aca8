use thiserror::Error;

/// Errors produced by the shape kernel and the modules built on top of it.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed polygon: {0}")]
    MalformedPolygon(String),
    #[error("degenerate shape: {0}")]
    DegenerateShape(String),
    #[error("degenerate hull: all points collinear")]
    DegenerateHull,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resolution error: {0}")]
    Resolution(String),
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),
    #[error("inconsistency detected: {0}")]
    Inconsistency(String),
    #[error("infeasible configuration: {0}")]
    Infeasible(String),
    #[error("invalid parametrization: {0}")]
    InvalidParametrization(String),
    #[error("objective undefined: lambda0 vanishes")]
    UndefinedObjective,
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("trajectory diverged: {0}")]
    Divergence(String),
    #[error("finite-difference stencil failure: {0}")]
    StencilFailure(String),
    #[error("closed curve not found, best closure gap {gap:.3e}")]
    NonClosure { gap: f64 },
    #[error("line search stalled at iteration {iter}")]
    LineSearchStall { iter: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
