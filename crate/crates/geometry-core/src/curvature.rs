use nalgebra::DMatrix;

use crate::connection::christoffel_unchecked;
use crate::error::GeometryError;
use crate::patch::CoordinatePatch;
use crate::stencil::{partial_vec, StencilConfig};

/// Riemann, Ricci, and scalar curvature at a point.
///
/// Sign convention: R(X,Y)Z = ∇ₓ∇ᵧZ − ∇ᵧ∇ₓZ − ∇₍ₓ,ᵧ₎Z and
/// Rm(X,Y,Z,W) = g(R(X,Y)Z, W), with Ricci the trace that makes the round
/// sphere positively curved.
#[derive(Debug, Clone)]
pub struct CurvaturePack {
    dim: usize,
    /// Fully lowered components, layout ((i·n + j)·n + k)·n + l.
    riemann: Vec<f64>,
    ricci: DMatrix<f64>,
    scalar: f64,
}

impl CurvaturePack {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Rᵢⱼₖₗ = g(R(∂ᵢ,∂ⱼ)∂ₖ, ∂ₗ).
    pub fn riemann(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        let n = self.dim;
        self.riemann[((i * n + j) * n + k) * n + l]
    }

    pub fn ricci(&self) -> &DMatrix<f64> {
        &self.ricci
    }

    pub fn scalar(&self) -> f64 {
        self.scalar
    }

    /// Largest violation of the Riemann/Ricci symmetries, for diagnostics.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let r = self.riemann(i, j, k, l);
                        worst = worst.max((r + self.riemann(j, i, k, l)).abs());
                        worst = worst.max((r + self.riemann(i, j, l, k)).abs());
                        worst = worst.max((r - self.riemann(k, l, i, j)).abs());
                    }
                }
                worst = worst.max((self.ricci[(i, j)] - self.ricci[(j, i)]).abs());
            }
        }
        worst
    }
}

/// Riemann, Ricci, and scalar curvature of the patch metric at `point`.
pub fn curvature(
    patch: &CoordinatePatch,
    point: &[f64],
    cfg: &StencilConfig,
) -> Result<CurvaturePack, GeometryError> {
    patch.require_clearance(point, cfg, 2)?;
    curvature_unchecked(patch, point, cfg)
}

pub(crate) fn curvature_unchecked(
    patch: &CoordinatePatch,
    point: &[f64],
    cfg: &StencilConfig,
) -> Result<CurvaturePack, GeometryError> {
    let n = patch.dim();
    let (g, ginv) = patch.metric_and_inverse_at(point)?;
    let gamma = christoffel_unchecked(patch, point, cfg)?;

    // dgamma[a] holds ∂ₐΓ, flattened in the connection layout.
    let mut eval = |p: &[f64]| -> Result<Vec<f64>, GeometryError> {
        let c = christoffel_unchecked(patch, p, cfg)?;
        Ok((0..n * n * n)
            .map(|idx| {
                let k = idx / (n * n);
                let i = (idx / n) % n;
                let j = idx % n;
                c.get(k, i, j)
            })
            .collect())
    };
    let dgamma: Vec<Vec<f64>> = (0..n)
        .map(|a| partial_vec(&mut eval, point, a, cfg))
        .collect::<Result<_, _>>()?;
    let dg = |a: usize, m: usize, j: usize, k: usize| dgamma[a][(m * n + j) * n + k];

    // Upper-index tensor of R(∂ᵢ,∂ⱼ)∂ₖ along ∂ₘ.
    let mut upper = vec![0.0; n * n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for m in 0..n {
                    let mut v = dg(i, m, j, k) - dg(j, m, i, k);
                    for p in 0..n {
                        v += gamma.get(m, i, p) * gamma.get(p, j, k)
                            - gamma.get(m, j, p) * gamma.get(p, i, k);
                    }
                    upper[((i * n + j) * n + k) * n + m] = v;
                }
            }
        }
    }

    let mut riemann = vec![0.0; n * n * n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut v = 0.0;
                    for m in 0..n {
                        v += g[(l, m)] * upper[((i * n + j) * n + k) * n + m];
                    }
                    riemann[((i * n + j) * n + k) * n + l] = v;
                }
            }
        }
    }

    let mut ricci = DMatrix::zeros(n, n);
    for j in 0..n {
        for k in 0..n {
            let mut v = 0.0;
            for i in 0..n {
                for l in 0..n {
                    v += ginv[(i, l)] * riemann[((i * n + j) * n + k) * n + l];
                }
            }
            ricci[(j, k)] = v;
        }
    }

    let mut scalar = 0.0;
    for j in 0..n {
        for k in 0..n {
            scalar += ginv[(j, k)] * ricci[(j, k)];
        }
    }

    Ok(CurvaturePack {
        dim: n,
        riemann,
        ricci,
        scalar,
    })
}
