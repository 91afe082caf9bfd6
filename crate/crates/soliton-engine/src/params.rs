use serde::Serialize;

use crate::error::SolitonError;

/// How λ is constrained for a given soliton notion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LambdaMode {
    Constant,
    FunctionOfR,
    Unconstrained,
}

/// The structure constants of the gradient Einstein-type equation
/// α·Ric + β·∇∇F + μ·dF⊗dF = (ρR + λ)g, specialized to α = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EinsteinTypeParams {
    pub beta: f64,
    pub mu: f64,
    pub rho: f64,
    pub lambda_mode: LambdaMode,
}

impl EinsteinTypeParams {
    /// α is fixed to zero for this entire toolkit.
    pub const ALPHA: f64 = 0.0;

    pub fn new(
        beta: f64,
        mu: f64,
        rho: f64,
        lambda_mode: LambdaMode,
    ) -> Result<Self, SolitonError> {
        if beta == 0.0 && mu == 0.0 {
            return Err(SolitonError::InvalidParameters(
                "(beta, mu) = (0, 0) is excluded: with alpha = 0 the equation would be vacuous"
                    .into(),
            ));
        }
        Ok(Self {
            beta,
            mu,
            rho,
            lambda_mode,
        })
    }
}

/// Parameters after dividing the equation by β and absorbing the conformal
/// factor: ∇∇F = φg + c·dF⊗dF with c = −μ/β.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedParams {
    pub c: f64,
    /// β is retained so λ can be recovered from the reduced φ.
    pub beta: f64,
    /// Records that φ has been divided by β exactly once.
    pub phi_rescaled: bool,
}

impl ReducedParams {
    /// Directly from a reduced constant c, with β = 1.
    pub fn from_c(c: f64) -> Self {
        Self {
            c,
            beta: 1.0,
            phi_rescaled: true,
        }
    }
}

/// Reduce the (β, μ) pair to the single constant c = −μ/β.
pub fn reduce(params: &EinsteinTypeParams) -> Result<ReducedParams, SolitonError> {
    if params.beta == 0.0 {
        return Err(SolitonError::BetaZero);
    }
    Ok(ReducedParams {
        c: -params.mu / params.beta,
        beta: params.beta,
        phi_rescaled: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_examples() {
        let p = EinsteinTypeParams::new(1.0, 0.0, 1.0, LambdaMode::Constant).unwrap();
        assert_eq!(reduce(&p).unwrap().c, 0.0);

        // quasi-Yamabe bullet with k = 2: mu = -1/2
        let p = EinsteinTypeParams::new(1.0, -0.5, 1.0, LambdaMode::Constant).unwrap();
        assert_eq!(reduce(&p).unwrap().c, 0.5);

        let p = EinsteinTypeParams::new(2.0, 3.0, 0.0, LambdaMode::Unconstrained).unwrap();
        assert_eq!(reduce(&p).unwrap().c, -1.5);
    }

    #[test]
    fn beta_zero_is_redirected() {
        let p = EinsteinTypeParams::new(0.0, 1.0, 0.0, LambdaMode::Unconstrained).unwrap();
        assert!(matches!(reduce(&p), Err(SolitonError::BetaZero)));
    }

    #[test]
    fn zero_pair_rejected() {
        assert!(EinsteinTypeParams::new(0.0, 0.0, 1.0, LambdaMode::Constant).is_err());
    }
}
