use nalgebra::DMatrix;

use crate::stencil::{partial_scalar, second_partial_scalar, StencilConfig};

type ValueFn = dyn Fn(&[f64]) -> f64 + Send + Sync;
type GradientFn = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;
type SecondFn = dyn Fn(&[f64]) -> DMatrix<f64> + Send + Sync;

/// A scalar function on a patch, optionally with analytic partial
/// derivatives. When derivative maps are absent they are stenciled.
pub struct ScalarField {
    value: Box<ValueFn>,
    gradient: Option<Box<GradientFn>>,
    second: Option<Box<SecondFn>>,
}

impl ScalarField {
    pub fn new(value: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            value: Box::new(value),
            gradient: None,
            second: None,
        }
    }

    /// Attach an analytic map of first partials ∂ᵢF.
    pub fn with_gradient(
        mut self,
        gradient: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        self.gradient = Some(Box::new(gradient));
        self
    }

    /// Attach an analytic map of second partials ∂ᵢ∂ⱼF.
    pub fn with_second_partials(
        mut self,
        second: impl Fn(&[f64]) -> DMatrix<f64> + Send + Sync + 'static,
    ) -> Self {
        self.second = Some(Box::new(second));
        self
    }

    pub fn value_at(&self, point: &[f64]) -> f64 {
        (self.value)(point)
    }

    /// First partials ∂ᵢF, analytic when available.
    pub fn partials_at(&self, point: &[f64], cfg: &StencilConfig) -> Vec<f64> {
        if let Some(g) = &self.gradient {
            return g(point);
        }
        (0..point.len())
            .map(|i| partial_scalar(&mut |p: &[f64]| (self.value)(p), point, i, cfg))
            .collect()
    }

    /// Second partials ∂ᵢ∂ⱼF as a symmetric matrix.
    pub fn second_partials_at(&self, point: &[f64], cfg: &StencilConfig) -> DMatrix<f64> {
        let n = point.len();
        if let Some(s) = &self.second {
            let m = s(point);
            return 0.5 * (&m + m.transpose());
        }
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = second_partial_scalar(
                    &mut |p: &[f64]| (self.value)(p),
                    point,
                    i,
                    j,
                    cfg,
                );
                m[(i, j)] = v;
                m[(j, i)] = v;
            }
        }
        m
    }
}

impl std::fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ScalarField")
            .field("analytic_gradient", &self.gradient.is_some())
            .field("analytic_second", &self.second.is_some())
            .finish_non_exhaustive()
    }
}
