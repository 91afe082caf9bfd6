use std::f64::consts::PI;

use geometry_core::CoordinatePatch;
use nalgebra::{DMatrix, DVector};

use crate::error::WarpedError;
use crate::fiber::FiberPreset;
use crate::metric::WarpedMetric;

/// How to realize the fiber in explicit coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberChart {
    /// Polar angles: spherical chart for S² (n = 3), hyperspherical for S³
    /// (n = 4).
    SphericalPolar,
    /// Flat angular coordinates on a torus fiber, any dimension.
    TorusAngles,
}

impl std::fmt::Display for FiberChart {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FiberChart::SphericalPolar => write!(f, "spherical-polar"),
            FiberChart::TorusAngles => write!(f, "torus-angles"),
        }
    }
}

/// Margin from chart singularities (θ = 0, π) and interval ends.
const ANGULAR_CLEARANCE: f64 = 0.25;
const PATCH_MARGIN: f64 = 0.08;

impl WarpedMetric {
    /// Realize dr² + ψ²·g_fiber as an explicit coordinate patch for the
    /// finite-difference oracle. Fiber-chart singularities are excluded
    /// from the domain box by margin.
    pub fn to_patch(&self, chart: FiberChart) -> Result<CoordinatePatch, WarpedError> {
        let d = self.fiber().dim();
        let n = self.dimension();
        let (r0, r1) = self.interval();
        let margin = PATCH_MARGIN.min((r1 - r0) / 4.0);

        let unsupported = || WarpedError::UnsupportedChart {
            fiber: format!("{}({})", self.fiber().preset(), d),
            chart: chart.to_string(),
        };

        let mut bounds = vec![(r0, r1)];
        match (chart, self.fiber().preset()) {
            (FiberChart::SphericalPolar, FiberPreset::UnitSphere) => {
                if !(d == 2 || d == 3) {
                    return Err(unsupported());
                }
                for _ in 0..d - 1 {
                    bounds.push((ANGULAR_CLEARANCE, PI - ANGULAR_CLEARANCE));
                }
                bounds.push((ANGULAR_CLEARANCE, 2.0 * PI - ANGULAR_CLEARANCE));
            }
            (FiberChart::TorusAngles, FiberPreset::FlatTorus) => {
                for _ in 0..d {
                    bounds.push((ANGULAR_CLEARANCE, 2.0 * PI - ANGULAR_CLEARANCE));
                }
            }
            _ => return Err(unsupported()),
        }

        let warping = self.warping().clone();
        let is_sphere = matches!(chart, FiberChart::SphericalPolar);
        let patch = CoordinatePatch::new(n, bounds, margin, move |p: &[f64]| {
            let psi2 = warping.value(p[0]).powi(2);
            let mut diag = DVector::from_element(p.len(), psi2);
            diag[0] = 1.0;
            if is_sphere {
                // nested sin² factors of the round-sphere polar chart
                let mut acc = 1.0;
                for a in 1..p.len() - 1 {
                    acc *= p[a].sin().powi(2);
                    diag[a + 1] *= acc;
                }
            }
            DMatrix::from_diagonal(&diag)
        })?;
        Ok(patch)
    }
}
