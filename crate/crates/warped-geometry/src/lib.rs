//! Closed-form curvature and radial calculus for warped products
//! g = dr² + ψ(r)²·g_N over Einstein fibers, plus realization of these
//! metrics as coordinate patches so the finite-difference engine can
//! cross-check every formula.
//!
//! Fibers are normalized as Ric_fiber = (n−2)·κ·g_fiber with κ = 1 for the
//! unit round sphere, which makes the cone-flatness condition read ψ'² = κ.
//! Profiles and fields are immutable after construction; all operations are
//! pure and safe for concurrent sweeps over r.

mod chart;
mod error;
mod fiber;
mod metric;
mod profile;
mod radial;
mod record;
mod spline;

pub use chart::FiberChart;
pub use error::WarpedError;
pub use fiber::{FiberPreset, FiberSpec};
pub use metric::WarpedMetric;
pub use profile::{RadialFn, Representation, WarpingProfile};
pub use radial::RadialField;
pub use record::{Record, RecordKind};
pub use spline::{CubicSpline, EndCondition};
