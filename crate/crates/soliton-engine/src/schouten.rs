use geometry_core::CurvaturePack;
use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::SolitonError;

/// σ_k-curvature: the k-th elementary symmetric polynomial of the
/// eigenvalues of the Schouten tensor A = (Ric − R/(2(n−1))·g)/(n−2),
/// taken against the metric. σ₁ = R/(2(n−1)).
pub fn schouten_sigma_k(
    curvature: &CurvaturePack,
    metric: &DMatrix<f64>,
    n: usize,
    k: usize,
) -> Result<f64, SolitonError> {
    if n < 3 {
        return Err(SolitonError::DimensionTooSmall { n });
    }
    if k < 1 || k > n {
        return Err(SolitonError::InvalidSigmaIndex { k, n });
    }
    if curvature.dim() != n || metric.nrows() != n || metric.ncols() != n {
        return Err(SolitonError::InvalidParameters(format!(
            "dimension mismatch: n = {n}, curvature dim {}, metric {}x{}",
            curvature.dim(),
            metric.nrows(),
            metric.ncols()
        )));
    }

    let nf = n as f64;
    let schouten = (curvature.ricci()
        - metric * (curvature.scalar() / (2.0 * (nf - 1.0))))
        / (nf - 2.0);

    // eigenvalues of A relative to g via the Cholesky congruence
    // L⁻¹·A·L⁻ᵀ with g = L·Lᵀ
    let chol = metric
        .clone()
        .cholesky()
        .ok_or_else(|| SolitonError::InvalidParameters("metric not positive definite".into()))?;
    let l = chol.l();
    let half = l
        .solve_lower_triangular(&schouten)
        .ok_or_else(|| SolitonError::InvalidParameters("singular Cholesky factor".into()))?;
    let congruent = l
        .solve_lower_triangular(&half.transpose())
        .ok_or_else(|| SolitonError::InvalidParameters("singular Cholesky factor".into()))?
        .transpose();
    let symmetric = 0.5 * (&congruent + congruent.transpose());
    let eigenvalues = SymmetricEigen::new(symmetric).eigenvalues;

    Ok(elementary_symmetric(eigenvalues.as_slice(), k))
}

/// e_k of the given values by the coefficient recurrence.
fn elementary_symmetric(values: &[f64], k: usize) -> f64 {
    let mut e = vec![0.0; k + 1];
    e[0] = 1.0;
    for &v in values {
        for j in (1..=k).rev() {
            e[j] += v * e[j - 1];
        }
    }
    e[k]
}
