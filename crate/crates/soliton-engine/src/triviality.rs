use serde::Serialize;
use warped_geometry::RadialField;

use crate::error::SolitonError;

/// Outcome of the β = 0 case analysis on a 2m-dimensional space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrivialityVerdict {
    /// F is constant: the structure exists but is trivial.
    Trivial,
    /// F is nonconstant, which contradicts (2m−1)F'² = 0: no non-trivial
    /// structure exists.
    ForcedTrivial,
    /// m = 1: the trace argument gives no information.
    Undetermined,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TrivialityReport {
    /// (2m−1)·sup F'² over the field's interval.
    pub residual: f64,
    pub sup_slope_squared: f64,
    pub verdict: TrivialityVerdict,
}

/// β = 0 forces (2m−1)F'² = 0: tracing the equation gives |∇F|² = 2mφ
/// while the radial component gives F'² = φ. For m > 1 any nonconstant F
/// is therefore inconsistent.
pub fn triviality_check_beta_zero(
    m: usize,
    field: &RadialField,
) -> Result<TrivialityReport, SolitonError> {
    if m < 1 {
        return Err(SolitonError::InvalidParameters(
            "half-dimension m must be at least 1".into(),
        ));
    }
    let (r0, r1) = field.interval();
    let samples = 512;
    let mut sup = 0.0f64;
    for i in 0..=samples {
        let r = r0 + (r1 - r0) * i as f64 / samples as f64;
        sup = sup.max(field.d1(r).powi(2));
    }
    let residual = (2.0 * m as f64 - 1.0) * sup;
    let verdict = if m == 1 {
        TrivialityVerdict::Undetermined
    } else if sup <= 1e-20 {
        TrivialityVerdict::Trivial
    } else {
        TrivialityVerdict::ForcedTrivial
    };
    Ok(TrivialityReport {
        residual,
        sup_slope_squared: sup,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear_field() -> RadialField {
        RadialField::closed_form(
            "identity",
            (0.1, 2.0),
            |r| r,
            |_| 1.0,
            |_| 0.0,
            |_| 0.0,
            |_| 0.0,
        )
        .unwrap()
    }

    fn constant_field() -> RadialField {
        RadialField::closed_form(
            "constant",
            (0.1, 2.0),
            |_| 3.0,
            |_| 0.0,
            |_| 0.0,
            |_| 0.0,
            |_| 0.0,
        )
        .unwrap()
    }

    #[test]
    fn nonconstant_forces_trivial() {
        let report = triviality_check_beta_zero(2, &linear_field()).unwrap();
        assert_eq!(report.verdict, TrivialityVerdict::ForcedTrivial);
        assert!((report.residual - 3.0).abs() < 1e-12);
    }

    #[test]
    fn constant_is_trivial() {
        let report = triviality_check_beta_zero(2, &constant_field()).unwrap();
        assert_eq!(report.verdict, TrivialityVerdict::Trivial);
        assert_eq!(report.residual, 0.0);
    }

    #[test]
    fn m_one_undetermined() {
        let report = triviality_check_beta_zero(1, &linear_field()).unwrap();
        assert_eq!(report.verdict, TrivialityVerdict::Undetermined);
    }
}
