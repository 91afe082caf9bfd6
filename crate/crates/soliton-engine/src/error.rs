use thiserror::Error;

use crate::cases::CaseTag;

#[derive(Debug, Error)]
pub enum SolitonError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("beta = 0: the reduction c = -mu/beta is undefined; run the beta-zero triviality check instead")]
    BetaZero,

    #[error("case {tag} admits no non-trivial structure; nothing to build")]
    NoModel { tag: CaseTag },

    #[error("insufficient smoothness: {what} is spline-represented and the spline fallback is disabled")]
    InsufficientSmoothness { what: String },

    #[error("step size underflow near r = {r} (h = {h:.3e}); the problem looks stiff")]
    Stiffness { r: f64, h: f64 },

    #[error("step budget exhausted at r = {r}")]
    StepLimit { r: f64 },

    #[error("dimension {n} too small; this operation needs n >= 3")]
    DimensionTooSmall { n: usize },

    #[error("sigma_k index k = {k} out of range 1..={n}")]
    InvalidSigmaIndex { k: usize, n: usize },

    #[error("unknown soliton type `{0}`")]
    UnknownSolitonType(String),

    #[error("soliton type `{name}` needs the parameter `{param}`")]
    MissingLookupParameter { name: String, param: String },

    #[error(transparent)]
    Warped(#[from] warped_geometry::WarpedError),

    #[error(transparent)]
    Geometry(#[from] geometry_core::GeometryError),
}
