//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the geometry, raster, and kernel operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("curve parameter t={0} outside [0, 1]")]
    ParamOutOfRange(f64),
    #[error("derivative order {0} unsupported (expected 1 or 2)")]
    DerivativeOrder(u32),
    #[error("degenerate tangent: |B'(t)|={0:.3e} too small for curvature")]
    DegenerateTangent(f64),
    #[error("control point count {0} unsupported (expected 4, 5, or 6)")]
    ControlPointCount(usize),
    #[error("invalid width profile: start={start}, end={end} (need start >= end > 0)")]
    WidthProfile { start: f64, end: f64 },
    #[error("non-finite coordinate in control point {0}")]
    NonFinitePoint(usize),
    #[error("canvas {0}x{1} below the 8x8 minimum")]
    CanvasTooSmall(u32, u32),
    #[error("shape mismatch: {0}x{1} vs {2}x{3}")]
    ShapeMismatch(u32, u32, u32, u32),
    #[error("image {0}x{1} too small (SSIM needs at least 8x8)")]
    ImageTooSmall(u32, u32),
    #[error("point ({0:.2}, {1:.2}) outside canvas")]
    OutsideCanvas(f64, f64),
    #[error("no skeleton signal in the window around ({0:.2}, {1:.2})")]
    NoOrientationSignal(f64, f64),
    #[error("point ({0:.2}, {1:.2}) is not on the skeleton")]
    NotOnSkeleton(f64, f64),
    #[error("branch exhausted at chain offset {0}: no curve endpoint reachable")]
    BranchExhausted(usize),
    #[error("empty mask: {0}")]
    EmptyMask(&'static str),
    #[error("empty skeleton: root segment pruned by the canvas")]
    EmptySkeleton,
    #[error("invalid parameter: {0}")]
    InvalidParams(String),
    #[error("invalid noise schedule: {0}")]
    InvalidSchedule(String),
    #[error("diffusion step {0} outside 1..={1}")]
    StepOutOfRange(usize, usize),
    #[error("predictor output {0}x{1} does not match input {2}x{3}")]
    PredictorShape(usize, usize, usize, usize),
    #[error("feature stacks disagree: {0}")]
    FeatureShape(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("pgm parse error: {0}")]
    PgmParse(String),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
