use thiserror::Error;

/// Errors raised by patch queries and stencil operations.
#[derive(Debug, Error)]
pub enum GeometryError {
    /// The queried point is outside the domain box or too close to its boundary.
    #[error("point {point:?} too close to the domain boundary (clearance {clearance:.3e}, margin {margin:.3e})")]
    OutOfDomain {
        point: Vec<f64>,
        clearance: f64,
        margin: f64,
    },

    /// The metric failed a Cholesky factorization at a stencil node.
    #[error("metric not positive definite at {point:?}")]
    DegenerateMetric { point: Vec<f64> },

    /// The metric component map returned a non-symmetric matrix.
    #[error("metric not symmetric at {point:?} (max deviation {deviation:.3e})")]
    AsymmetricMetric { point: Vec<f64>, deviation: f64 },

    /// Point or field dimension does not match the patch dimension.
    #[error("dimension mismatch: patch has dimension {expected}, input has {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Patch construction rejected the inputs.
    #[error("invalid patch: {0}")]
    InvalidPatch(String),

    /// The stencil reach exceeds the patch regularity margin.
    #[error("stencil reach {reach:.3e} exceeds the regularity margin {margin:.3e}")]
    StencilTooCoarse { reach: f64, margin: f64 },
}
