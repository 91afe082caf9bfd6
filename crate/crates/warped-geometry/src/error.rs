use thiserror::Error;

#[derive(Debug, Error)]
pub enum WarpedError {
    #[error("radius {r} outside the warping interval [{start}, {end}]")]
    OutOfDomain { r: f64, start: f64, end: f64 },

    #[error("warping function not positive at r = {r} (value {value})")]
    NonPositiveWarping { r: f64, value: f64 },

    #[error("invalid warping profile: {0}")]
    InvalidProfile(String),

    #[error("invalid fiber: {0}")]
    InvalidFiber(String),

    #[error("total dimension {n} too small; warped curvature formulas need n >= 3")]
    DimensionTooSmall { n: usize },

    #[error("no built-in chart for fiber {fiber} with selector {chart}")]
    UnsupportedChart { fiber: String, chart: String },

    #[error("radial field derivative levels inconsistent near r = {r} (deviation {deviation:.3e})")]
    InconsistentDerivatives { r: f64, deviation: f64 },

    #[error("profile record error: {0}")]
    Record(String),

    #[error(transparent)]
    Geometry(#[from] geometry_core::GeometryError),
}
