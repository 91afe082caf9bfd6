use std::sync::Arc;

use crate::error::WarpedError;
use crate::profile::{RadialFn, Representation};
use crate::spline::{CubicSpline, EndCondition};

#[derive(Clone)]
enum FieldInner {
    ClosedForm {
        label: String,
        f0: RadialFn,
        f1: RadialFn,
        f2: RadialFn,
        f3: RadialFn,
        f4: RadialFn,
    },
    Spline(CubicSpline),
}

/// Radial potential F with derivatives up to F'''.
///
/// Closed-form fields also carry F'''' so that second derivatives of the
/// conformal factor can be taken analytically; spline fields are piecewise
/// cubic, where F'''' vanishes identically inside each piece.
#[derive(Clone)]
pub struct RadialField {
    interval: (f64, f64),
    inner: FieldInner,
}

impl RadialField {
    /// Closed-form field from five analytic derivative levels.
    #[allow(clippy::too_many_arguments)]
    pub fn closed_form(
        label: impl Into<String>,
        interval: (f64, f64),
        f0: impl Fn(f64) -> f64 + Send + Sync + 'static,
        f1: impl Fn(f64) -> f64 + Send + Sync + 'static,
        f2: impl Fn(f64) -> f64 + Send + Sync + 'static,
        f3: impl Fn(f64) -> f64 + Send + Sync + 'static,
        f4: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self, WarpedError> {
        let field = Self {
            interval,
            inner: FieldInner::ClosedForm {
                label: label.into(),
                f0: Arc::new(f0),
                f1: Arc::new(f1),
                f2: Arc::new(f2),
                f3: Arc::new(f3),
                f4: Arc::new(f4),
            },
        };
        field.check_interval()?;
        field.consistency_check(1e-6)?;
        Ok(field)
    }

    /// Closed-form field without an analytic fourth derivative; F'''' is
    /// stenciled from the supplied F''' closure.
    pub fn closed_form_three(
        label: impl Into<String>,
        interval: (f64, f64),
        f0: impl Fn(f64) -> f64 + Send + Sync + 'static,
        f1: impl Fn(f64) -> f64 + Send + Sync + 'static,
        f2: impl Fn(f64) -> f64 + Send + Sync + 'static,
        f3: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self, WarpedError> {
        let f3 = Arc::new(f3);
        let f3_for_d4 = Arc::clone(&f3);
        let width = interval.1 - interval.0;
        let f4 = move |r: f64| stencil_derivative(&*f3_for_d4, r, width);
        let field = Self {
            interval,
            inner: FieldInner::ClosedForm {
                label: label.into(),
                f0: Arc::new(f0),
                f1: Arc::new(f1),
                f2: Arc::new(f2),
                f3: {
                    let f3 = Arc::clone(&f3);
                    Arc::new(move |r| f3(r))
                },
                f4: Arc::new(f4),
            },
        };
        field.check_interval()?;
        field.consistency_check(1e-6)?;
        Ok(field)
    }

    pub fn from_spline(spline: CubicSpline) -> Result<Self, WarpedError> {
        let interval = spline.domain();
        let field = Self {
            interval,
            inner: FieldInner::Spline(spline),
        };
        field.check_interval()?;
        Ok(field)
    }

    /// Fit a spline through samples of F.
    pub fn from_samples(r: Vec<f64>, f: Vec<f64>) -> Result<Self, WarpedError> {
        Self::from_spline(CubicSpline::new(r, f, EndCondition::NotAKnot)?)
    }

    fn check_interval(&self) -> Result<(), WarpedError> {
        let (r0, r1) = self.interval;
        if !(r1 > r0) {
            return Err(WarpedError::InvalidProfile(format!(
                "empty potential interval [{r0}, {r1}]"
            )));
        }
        Ok(())
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn representation(&self) -> Representation {
        match &self.inner {
            FieldInner::ClosedForm { .. } => Representation::ClosedForm,
            FieldInner::Spline(_) => Representation::SampledSpline,
        }
    }

    pub fn label(&self) -> &str {
        match &self.inner {
            FieldInner::ClosedForm { label, .. } => label,
            FieldInner::Spline(_) => "sampled-spline",
        }
    }

    pub fn check_radius(&self, r: f64) -> Result<(), WarpedError> {
        let (start, end) = self.interval;
        if r < start || r > end {
            return Err(WarpedError::OutOfDomain { r, start, end });
        }
        Ok(())
    }

    pub fn value(&self, r: f64) -> f64 {
        match &self.inner {
            FieldInner::ClosedForm { f0, .. } => f0(r),
            FieldInner::Spline(s) => s.value(r),
        }
    }

    pub fn d1(&self, r: f64) -> f64 {
        match &self.inner {
            FieldInner::ClosedForm { f1, .. } => f1(r),
            FieldInner::Spline(s) => s.d1(r),
        }
    }

    pub fn d2(&self, r: f64) -> f64 {
        match &self.inner {
            FieldInner::ClosedForm { f2, .. } => f2(r),
            FieldInner::Spline(s) => s.d2(r),
        }
    }

    pub fn d3(&self, r: f64) -> f64 {
        match &self.inner {
            FieldInner::ClosedForm { f3, .. } => f3(r),
            FieldInner::Spline(s) => s.d3(r),
        }
    }

    /// F''''. Zero for splines: a cubic piece has no fourth derivative.
    pub fn d4(&self, r: f64) -> f64 {
        match &self.inner {
            FieldInner::ClosedForm { f4, .. } => f4(r),
            FieldInner::Spline(_) => 0.0,
        }
    }

    /// Smallest F' over a dense sample of the interval.
    pub fn min_slope(&self, samples: usize) -> f64 {
        let (r0, r1) = self.interval;
        (0..=samples)
            .map(|i| self.d1(r0 + (r1 - r0) * i as f64 / samples as f64))
            .fold(f64::INFINITY, f64::min)
    }

    /// Cross-check the derivative levels against finite differences of the
    /// level below, at a few interior points. Closed forms must agree to
    /// `tol` relative to the local magnitude; spline fields are checked only
    /// through F'' since their third derivative jumps at knots.
    pub fn consistency_check(&self, tol: f64) -> Result<(), WarpedError> {
        let (r0, r1) = self.interval;
        let width = r1 - r0;
        let depth = match &self.inner {
            FieldInner::ClosedForm { .. } => 3,
            FieldInner::Spline(_) => 2,
        };
        for i in 1..=5 {
            let r = r0 + width * i as f64 / 6.0;
            let levels = [self.value(r), self.d1(r), self.d2(r), self.d3(r)];
            for k in 0..depth {
                let fd = stencil_derivative(
                    &|x| match k {
                        0 => self.value(x),
                        1 => self.d1(x),
                        _ => self.d2(x),
                    },
                    r,
                    width,
                );
                let scale = levels[k].abs().max(levels[k + 1].abs()).max(1.0);
                let deviation = (fd - levels[k + 1]).abs() / scale;
                if deviation > tol {
                    return Err(WarpedError::InconsistentDerivatives { r, deviation });
                }
            }
        }
        Ok(())
    }
}

/// Five-point derivative with a step scaled to the interval width.
fn stencil_derivative(f: &dyn Fn(f64) -> f64, r: f64, width: f64) -> f64 {
    let h = (width * 1e-4).max(1e-6);
    (-f(r + 2.0 * h) + 8.0 * f(r + h) - 8.0 * f(r - h) + f(r - 2.0 * h)) / (12.0 * h)
}

impl std::fmt::Debug for RadialField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadialField")
            .field("interval", &self.interval)
            .field("representation", &self.representation())
            .field("label", &self.label())
            .finish_non_exhaustive()
    }
}
