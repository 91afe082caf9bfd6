use crate::error::GeometryError;
use crate::patch::CoordinatePatch;
use crate::stencil::{partial_vec, StencilConfig};

/// Levi-Civita connection coefficients Γᵏᵢⱼ at a point.
#[derive(Debug, Clone)]
pub struct ConnectionCoefficients {
    dim: usize,
    /// Layout: gamma[(k * dim + i) * dim + j].
    gamma: Vec<f64>,
}

impl ConnectionCoefficients {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Γᵏᵢⱼ with upper index `k`.
    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.gamma[(k * self.dim + i) * self.dim + j]
    }

    fn set(&mut self, k: usize, i: usize, j: usize, v: f64) {
        self.gamma[(k * self.dim + i) * self.dim + j] = v;
    }
}

/// Partial derivatives of the metric: dg[k] is the flattened matrix ∂ₖg.
pub(crate) fn metric_partials(
    patch: &CoordinatePatch,
    point: &[f64],
    cfg: &StencilConfig,
) -> Result<Vec<Vec<f64>>, GeometryError> {
    let n = patch.dim();
    let mut eval = |p: &[f64]| -> Result<Vec<f64>, GeometryError> {
        Ok(patch.metric_at(p)?.as_slice().to_vec())
    };
    (0..n).map(|k| partial_vec(&mut eval, point, k, cfg)).collect()
}

/// Christoffel symbols from metric first derivatives, without the boundary
/// clearance check. Used internally when differentiating the connection.
pub(crate) fn christoffel_unchecked(
    patch: &CoordinatePatch,
    point: &[f64],
    cfg: &StencilConfig,
) -> Result<ConnectionCoefficients, GeometryError> {
    let n = patch.dim();
    let (_, ginv) = patch.metric_and_inverse_at(point)?;
    let dg = metric_partials(patch, point, cfg)?;
    // nalgebra stores column-major; entry (i, j) of the flattened matrix
    // sits at j * n + i. The metric is symmetric so the distinction only
    // matters for reading consistency.
    let entry = |k: usize, i: usize, j: usize| dg[k][j * n + i];

    let mut out = ConnectionCoefficients {
        dim: n,
        gamma: vec![0.0; n * n * n],
    };
    for l in 0..n {
        for i in 0..n {
            for j in i..n {
                let mut acc = 0.0;
                for m in 0..n {
                    acc += ginv[(l, m)] * (entry(i, m, j) + entry(j, m, i) - entry(m, i, j));
                }
                let v = 0.5 * acc;
                out.set(l, i, j, v);
                out.set(l, j, i, v);
            }
        }
    }
    Ok(out)
}

/// Levi-Civita connection coefficients at `point`.
pub fn christoffel(
    patch: &CoordinatePatch,
    point: &[f64],
    cfg: &StencilConfig,
) -> Result<ConnectionCoefficients, GeometryError> {
    patch.require_clearance(point, cfg, 1)?;
    christoffel_unchecked(patch, point, cfg)
}

/// Max-abs of ∇ₖgᵢⱼ with Γ taken at `cfg` and ∂g re-differenced at the
/// halved step, so the residual measures genuine stencil error instead of
/// the algebraic identity the Levi-Civita formula satisfies by construction.
pub fn metric_compatibility_residual(
    patch: &CoordinatePatch,
    point: &[f64],
    cfg: &StencilConfig,
) -> Result<f64, GeometryError> {
    patch.require_clearance(point, cfg, 1)?;
    let n = patch.dim();
    let g = patch.metric_at(point)?;
    let gamma = christoffel_unchecked(patch, point, cfg)?;
    let dg = metric_partials(patch, point, &cfg.halved())?;
    let entry = |k: usize, i: usize, j: usize| dg[k][j * n + i];

    let mut worst = 0.0f64;
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut v = entry(k, i, j);
                for m in 0..n {
                    v -= gamma.get(m, k, i) * g[(m, j)] + gamma.get(m, k, j) * g[(i, m)];
                }
                worst = worst.max(v.abs());
            }
        }
    }
    Ok(worst)
}
