//! Finite-difference tensor calculus on coordinate patches.
//!
//! A patch is a metric component map over a box in ℝⁿ together with a
//! regularity margin. Everything here is stenciled from that map alone, so
//! the crate serves as an independent numerical oracle for closed-form
//! curvature and Hessian formulas supplied elsewhere. All operations are
//! pure; patches and fields are immutable and safe to share across threads.

mod calculus;
mod connection;
mod curvature;
mod error;
mod field;
mod patch;
mod stencil;

pub use calculus::{gradient_data, hessian, ricci_identity_residual, GradientData};
pub use connection::{christoffel, metric_compatibility_residual, ConnectionCoefficients};
pub use curvature::{curvature, CurvaturePack};
pub use error::GeometryError;
pub use field::ScalarField;
pub use patch::CoordinatePatch;
pub use stencil::{StencilConfig, StencilOrder};
