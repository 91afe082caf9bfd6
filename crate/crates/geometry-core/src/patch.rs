use nalgebra::DMatrix;

use crate::error::GeometryError;
use crate::stencil::StencilConfig;

/// Relative tolerance for the metric symmetry check.
const SYMMETRY_TOL: f64 = 1e-9;

pub type MetricFn = dyn Fn(&[f64]) -> DMatrix<f64> + Send + Sync;

/// A coordinate chart: metric components over a closed box, with a
/// regularity margin inside which derivatives may be stenciled.
pub struct CoordinatePatch {
    dim: usize,
    metric: Box<MetricFn>,
    bounds: Vec<(f64, f64)>,
    margin: f64,
}

impl CoordinatePatch {
    pub fn new(
        dim: usize,
        bounds: Vec<(f64, f64)>,
        margin: f64,
        metric: impl Fn(&[f64]) -> DMatrix<f64> + Send + Sync + 'static,
    ) -> Result<Self, GeometryError> {
        if dim < 2 {
            return Err(GeometryError::InvalidPatch(format!(
                "dimension must be at least 2, got {dim}"
            )));
        }
        if bounds.len() != dim {
            return Err(GeometryError::DimensionMismatch {
                expected: dim,
                got: bounds.len(),
            });
        }
        if !(margin > 0.0) {
            return Err(GeometryError::InvalidPatch(format!(
                "margin must be positive, got {margin}"
            )));
        }
        for &(lo, hi) in &bounds {
            if !(hi - lo > 2.0 * margin) {
                return Err(GeometryError::InvalidPatch(format!(
                    "box interval [{lo}, {hi}] too narrow for margin {margin}"
                )));
            }
        }
        Ok(Self {
            dim,
            metric: Box::new(metric),
            bounds,
            margin,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    /// A point well inside the box, at equal clearance from all faces.
    pub fn center(&self) -> Vec<f64> {
        self.bounds.iter().map(|&(lo, hi)| 0.5 * (lo + hi)).collect()
    }

    /// Distance from `point` to the nearest box face; negative outside the box.
    pub fn clearance(&self, point: &[f64]) -> f64 {
        self.bounds
            .iter()
            .zip(point)
            .map(|(&(lo, hi), &x)| (x - lo).min(hi - x))
            .fold(f64::INFINITY, f64::min)
    }

    /// Metric components at `point`, symmetrized after checking the raw
    /// components for symmetry and positive definiteness.
    pub fn metric_at(&self, point: &[f64]) -> Result<DMatrix<f64>, GeometryError> {
        if point.len() != self.dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim,
                got: point.len(),
            });
        }
        let g = (self.metric)(point);
        let scale = g.amax().max(1.0);
        let mut deviation = 0.0f64;
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                deviation = deviation.max((g[(i, j)] - g[(j, i)]).abs());
            }
        }
        if deviation > SYMMETRY_TOL * scale {
            return Err(GeometryError::AsymmetricMetric {
                point: point.to_vec(),
                deviation,
            });
        }
        let sym = 0.5 * (&g + g.transpose());
        if sym.clone().cholesky().is_none() {
            return Err(GeometryError::DegenerateMetric {
                point: point.to_vec(),
            });
        }
        Ok(sym)
    }

    /// Metric and its inverse at `point`.
    pub fn metric_and_inverse_at(
        &self,
        point: &[f64],
    ) -> Result<(DMatrix<f64>, DMatrix<f64>), GeometryError> {
        let g = self.metric_at(point)?;
        let inv = g
            .clone()
            .cholesky()
            .ok_or_else(|| GeometryError::DegenerateMetric {
                point: point.to_vec(),
            })?
            .inverse();
        Ok((g, inv))
    }

    /// Reject points that sit within `levels` stenciling passes of the
    /// boundary. `levels` counts nested differentiations: 1 for first
    /// derivatives of the metric, 2 when those are differentiated again,
    /// and so on.
    pub(crate) fn require_clearance(
        &self,
        point: &[f64],
        cfg: &StencilConfig,
        levels: usize,
    ) -> Result<(), GeometryError> {
        if point.len() != self.dim {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dim,
                got: point.len(),
            });
        }
        let reach = cfg.reach() * levels as f64;
        if reach > self.margin {
            return Err(GeometryError::StencilTooCoarse {
                reach,
                margin: self.margin,
            });
        }
        let clearance = self.clearance(point);
        if clearance < self.margin {
            return Err(GeometryError::OutOfDomain {
                point: point.to_vec(),
                clearance,
                margin: self.margin,
            });
        }
        Ok(())
    }
}

impl std::fmt::Debug for CoordinatePatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CoordinatePatch")
            .field("dim", &self.dim)
            .field("bounds", &self.bounds)
            .field("margin", &self.margin)
            .finish_non_exhaustive()
    }
}
