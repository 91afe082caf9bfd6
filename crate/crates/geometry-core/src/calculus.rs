use nalgebra::DMatrix;

use crate::connection::christoffel_unchecked;
use crate::curvature::curvature_unchecked;
use crate::error::GeometryError;
use crate::field::ScalarField;
use crate::patch::CoordinatePatch;
use crate::stencil::{partial_vec, StencilConfig};

/// Covariant Hessian ∇∇F at `point`: second partials minus Γ-contraction.
pub fn hessian(
    patch: &CoordinatePatch,
    field: &ScalarField,
    point: &[f64],
    cfg: &StencilConfig,
) -> Result<DMatrix<f64>, GeometryError> {
    patch.require_clearance(point, cfg, 2)?;
    hessian_unchecked(patch, field, point, cfg)
}

fn hessian_unchecked(
    patch: &CoordinatePatch,
    field: &ScalarField,
    point: &[f64],
    cfg: &StencilConfig,
) -> Result<DMatrix<f64>, GeometryError> {
    let n = patch.dim();
    let gamma = christoffel_unchecked(patch, point, cfg)?;
    let grad = field.partials_at(point, cfg);
    let second = field.second_partials_at(point, cfg);
    let mut h = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut v = second[(i, j)];
            for k in 0..n {
                v -= gamma.get(k, i, j) * grad[k];
            }
            h[(i, j)] = v;
            h[(j, i)] = v;
        }
    }
    Ok(h)
}

/// Gradient vector, squared gradient norm, and Laplacian of a field.
#[derive(Debug, Clone)]
pub struct GradientData {
    /// Raised-index components gⁱʲ∂ⱼF.
    pub gradient: Vec<f64>,
    pub norm_squared: f64,
    pub laplacian: f64,
}

pub fn gradient_data(
    patch: &CoordinatePatch,
    field: &ScalarField,
    point: &[f64],
    cfg: &StencilConfig,
) -> Result<GradientData, GeometryError> {
    patch.require_clearance(point, cfg, 2)?;
    let n = patch.dim();
    let (_, ginv) = patch.metric_and_inverse_at(point)?;
    let partials = field.partials_at(point, cfg);
    let hess = hessian_unchecked(patch, field, point, cfg)?;

    let mut gradient = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            gradient[i] += ginv[(i, j)] * partials[j];
        }
    }
    let norm_squared = gradient
        .iter()
        .zip(&partials)
        .map(|(up, down)| up * down)
        .sum();
    let mut laplacian = 0.0;
    for i in 0..n {
        for j in 0..n {
            laplacian += ginv[(i, j)] * hess[(i, j)];
        }
    }
    Ok(GradientData {
        gradient,
        norm_squared,
        laplacian,
    })
}

/// Componentwise Δ∇F − ∇ΔF − Ric(∇F,·), which vanishes for every smooth
/// metric and field. This is the engine's master self-test: it exercises
/// the connection, its derivatives, and the curvature in one expression.
pub fn ricci_identity_residual(
    patch: &CoordinatePatch,
    field: &ScalarField,
    point: &[f64],
    cfg: &StencilConfig,
) -> Result<Vec<f64>, GeometryError> {
    patch.require_clearance(point, cfg, 3)?;
    let n = patch.dim();

    // T(y) = ∇dF at y, flattened as T[l*n + i] = ∇ₗ(dF)ᵢ.
    let mut covariant_grad = |p: &[f64]| -> Result<Vec<f64>, GeometryError> {
        let gamma = christoffel_unchecked(patch, p, cfg)?;
        let omega = field.partials_at(p, cfg);
        let domega = field.second_partials_at(p, cfg);
        let mut t = vec![0.0; n * n];
        for l in 0..n {
            for i in 0..n {
                let mut v = domega[(l, i)];
                for m in 0..n {
                    v -= gamma.get(m, l, i) * omega[m];
                }
                t[l * n + i] = v;
            }
        }
        Ok(t)
    };

    let t0 = covariant_grad(point)?;
    let dt: Vec<Vec<f64>> = (0..n)
        .map(|k| partial_vec(&mut covariant_grad, point, k, cfg))
        .collect::<Result<_, _>>()?;

    let (_, ginv) = patch.metric_and_inverse_at(point)?;
    let gamma = christoffel_unchecked(patch, point, cfg)?;
    let omega = field.partials_at(point, cfg);

    // Connection Laplacian of the one-form dF:
    // Δωᵢ = gᵏˡ(∂ₖTₗᵢ − Γᵐₖₗ Tₘᵢ − Γᵐₖᵢ Tₗₘ).
    let mut lap_omega = vec![0.0; n];
    for i in 0..n {
        let mut acc = 0.0;
        for k in 0..n {
            for l in 0..n {
                let mut v = dt[k][l * n + i];
                for m in 0..n {
                    v -= gamma.get(m, k, l) * t0[m * n + i];
                    v -= gamma.get(m, k, i) * t0[l * n + m];
                }
                acc += ginv[(k, l)] * v;
            }
        }
        lap_omega[i] = acc;
    }

    // ∇ᵢ(ΔF) for the scalar ΔF = gᵏˡ Tₖₗ.
    let mut laplacian_scalar = |p: &[f64]| -> Result<Vec<f64>, GeometryError> {
        let (_, gi) = patch.metric_and_inverse_at(p)?;
        let t = covariant_grad(p)?;
        let mut v = 0.0;
        for k in 0..n {
            for l in 0..n {
                v += gi[(k, l)] * t[k * n + l];
            }
        }
        Ok(vec![v])
    };
    let grad_lap: Vec<f64> = (0..n)
        .map(|i| Ok(partial_vec(&mut laplacian_scalar, point, i, cfg)?[0]))
        .collect::<Result<_, GeometryError>>()?;

    let ricci = curvature_unchecked(patch, point, cfg)?.ricci().clone();

    let mut residual = vec![0.0; n];
    for i in 0..n {
        let mut ric_term = 0.0;
        for j in 0..n {
            for m in 0..n {
                ric_term += ricci[(i, j)] * ginv[(j, m)] * omega[m];
            }
        }
        residual[i] = lap_omega[i] - grad_lap[i] - ric_term;
    }
    Ok(residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;

    fn flat(n: usize) -> CoordinatePatch {
        CoordinatePatch::new(n, vec![(-1.0, 1.0); n], 0.1, move |_p: &[f64]| {
            DMatrix::identity(n, n)
        })
        .unwrap()
    }

    #[test]
    fn flat_quadratic_hessian_is_identity() {
        let patch = flat(3);
        let field = ScalarField::new(|p: &[f64]| 0.5 * p.iter().map(|x| x * x).sum::<f64>());
        let h = hessian(&patch, &field, &[0.1, -0.2, 0.3], &StencilConfig::default()).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((h[(i, j)] - want).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn flat_linear_hessian_vanishes() {
        let patch = flat(2);
        let field = ScalarField::new(|p: &[f64]| 3.0 * p[0] - 2.0 * p[1] + 1.0);
        let h = hessian(&patch, &field, &[0.3, 0.4], &StencilConfig::default()).unwrap();
        assert!(h.amax() < 1e-9);
    }

    #[test]
    fn polar_radial_quadratic_hessian_equals_metric() {
        let patch = CoordinatePatch::new(2, vec![(0.5, 4.0), (0.2, 5.0)], 0.1, |p: &[f64]| {
            DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, p[0] * p[0]]))
        })
        .unwrap();
        let field = ScalarField::new(|p: &[f64]| 0.5 * p[0] * p[0]);
        let point = [1.7, 2.0];
        let h = hessian(&patch, &field, &point, &StencilConfig::default()).unwrap();
        let g = patch.metric_at(&point).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((h[(i, j)] - g[(i, j)]).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn flat_gradient_data() {
        let patch = flat(4);
        let field = ScalarField::new(|p: &[f64]| 0.5 * p.iter().map(|x| x * x).sum::<f64>());
        let data =
            gradient_data(&patch, &field, &[0.1, 0.0, -0.2, 0.3], &StencilConfig::default())
                .unwrap();
        assert!((data.laplacian - 4.0).abs() < 1e-7);

        let linear = ScalarField::new(|p: &[f64]| p[0]);
        let data =
            gradient_data(&patch, &linear, &[0.1, 0.0, -0.2, 0.3], &StencilConfig::default())
                .unwrap();
        assert!((data.norm_squared - 1.0).abs() < 1e-9);
        assert!(data.laplacian.abs() < 1e-9);
    }

    #[test]
    fn ricci_identity_flat_polynomial() {
        let patch = flat(3);
        let field = ScalarField::new(|p: &[f64]| {
            p[0].powi(3) + 2.0 * p[0] * p[1] * p[2] - p[2] * p[2]
        });
        let res =
            ricci_identity_residual(&patch, &field, &[0.2, -0.1, 0.3], &StencilConfig::default())
                .unwrap();
        for v in res {
            assert!(v.abs() < 1e-7, "residual {v}");
        }
    }

    #[test]
    fn ricci_identity_round_sphere() {
        let patch = CoordinatePatch::new(
            2,
            vec![(0.4, std::f64::consts::PI - 0.4), (0.3, 5.9)],
            0.15,
            |p: &[f64]| {
                DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, p[0].sin().powi(2)]))
            },
        )
        .unwrap();
        let field = ScalarField::new(|p: &[f64]| p[0].cos())
            .with_gradient(|p: &[f64]| vec![-p[0].sin(), 0.0])
            .with_second_partials(|p: &[f64]| {
                DMatrix::from_diagonal(&DVector::from_vec(vec![-p[0].cos(), 0.0]))
            });
        let res =
            ricci_identity_residual(&patch, &field, &[1.1, 2.0], &StencilConfig::default())
                .unwrap();
        for v in res {
            assert!(v.abs() < 1e-4, "residual {v}");
        }
    }
}
