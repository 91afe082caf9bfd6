use std::sync::Arc;

use crate::error::WarpedError;
use crate::spline::{CubicSpline, EndCondition};

/// Number of sample points used to check positivity at construction.
const POSITIVITY_SAMPLES: usize = 512;

pub type RadialFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Representation tag carried through reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    ClosedForm,
    SampledSpline,
}

impl std::fmt::Display for Representation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Representation::ClosedForm => write!(f, "closed-form"),
            Representation::SampledSpline => write!(f, "sampled-spline"),
        }
    }
}

#[derive(Clone)]
enum ProfileInner {
    ClosedForm {
        form: String,
        params: Vec<(String, f64)>,
        f: RadialFn,
        d1: RadialFn,
        d2: RadialFn,
        d3: RadialFn,
    },
    Spline(CubicSpline),
}

/// Warping function ψ on a validity interval [r₀, r₁] with r₀ > 0.
///
/// Closed-form profiles carry three analytic derivatives; sampled profiles
/// are C² cubic splines whose piecewise-constant third derivative is only a
/// fallback for identities that need ψ'''.
#[derive(Clone)]
pub struct WarpingProfile {
    interval: (f64, f64),
    inner: ProfileInner,
}

impl WarpingProfile {
    /// General closed-form constructor. All three derivatives are required.
    #[allow(clippy::too_many_arguments)]
    pub fn closed_form(
        form: impl Into<String>,
        params: Vec<(String, f64)>,
        interval: (f64, f64),
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d1: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d2: impl Fn(f64) -> f64 + Send + Sync + 'static,
        d3: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self, WarpedError> {
        let profile = Self {
            interval,
            inner: ProfileInner::ClosedForm {
                form: form.into(),
                params,
                f: Arc::new(f),
                d1: Arc::new(d1),
                d2: Arc::new(d2),
                d3: Arc::new(d3),
            },
        };
        profile.validate()?;
        Ok(profile)
    }

    /// Cylinder profile ψ ≡ a.
    pub fn constant(a: f64, interval: (f64, f64)) -> Result<Self, WarpedError> {
        Self::closed_form(
            "constant",
            vec![("a".into(), a)],
            interval,
            move |_| a,
            |_| 0.0,
            |_| 0.0,
            |_| 0.0,
        )
    }

    /// Cone-type profile ψ = a·r + b.
    pub fn linear(a: f64, b: f64, interval: (f64, f64)) -> Result<Self, WarpedError> {
        Self::closed_form(
            "linear",
            vec![("a".into(), a), ("b".into(), b)],
            interval,
            move |r| a * r + b,
            move |_| a,
            |_| 0.0,
            |_| 0.0,
        )
    }

    /// Round-sphere profile ψ = sin r, valid on a positive subinterval of (0, π).
    pub fn sine(interval: (f64, f64)) -> Result<Self, WarpedError> {
        Self::closed_form(
            "sin",
            vec![],
            interval,
            f64::sin,
            f64::cos,
            |r| -r.sin(),
            |r| -r.cos(),
        )
    }

    pub fn from_spline(spline: CubicSpline) -> Result<Self, WarpedError> {
        let interval = spline.domain();
        let profile = Self {
            interval,
            inner: ProfileInner::Spline(spline),
        };
        profile.validate()?;
        Ok(profile)
    }

    /// Fit a spline through samples of ψ.
    pub fn from_samples(r: Vec<f64>, psi: Vec<f64>) -> Result<Self, WarpedError> {
        Self::from_spline(CubicSpline::new(r, psi, EndCondition::NotAKnot)?)
    }

    fn validate(&self) -> Result<(), WarpedError> {
        let (r0, r1) = self.interval;
        if !(r0 > 0.0) {
            return Err(WarpedError::InvalidProfile(format!(
                "interval must start at positive r, got {r0}"
            )));
        }
        if !(r1 > r0) {
            return Err(WarpedError::InvalidProfile(format!(
                "empty interval [{r0}, {r1}]"
            )));
        }
        for i in 0..=POSITIVITY_SAMPLES {
            let r = r0 + (r1 - r0) * i as f64 / POSITIVITY_SAMPLES as f64;
            let v = self.value(r);
            if !(v > 0.0) || !v.is_finite() {
                return Err(WarpedError::NonPositiveWarping { r, value: v });
            }
        }
        Ok(())
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn representation(&self) -> Representation {
        match &self.inner {
            ProfileInner::ClosedForm { .. } => Representation::ClosedForm,
            ProfileInner::Spline(_) => Representation::SampledSpline,
        }
    }

    /// Closed-form tag and parameters, when this profile has them.
    pub fn form(&self) -> Option<(&str, &[(String, f64)])> {
        match &self.inner {
            ProfileInner::ClosedForm { form, params, .. } => Some((form, params)),
            ProfileInner::Spline(_) => None,
        }
    }

    pub fn spline(&self) -> Option<&CubicSpline> {
        match &self.inner {
            ProfileInner::Spline(s) => Some(s),
            _ => None,
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
            ProfileInner::ClosedForm { f, .. } => f(r),
            ProfileInner::Spline(s) => s.value(r),
        }
    }

    pub fn d1(&self, r: f64) -> f64 {
        match &self.inner {
            ProfileInner::ClosedForm { d1, .. } => d1(r),
            ProfileInner::Spline(s) => s.d1(r),
        }
    }

    pub fn d2(&self, r: f64) -> f64 {
        match &self.inner {
            ProfileInner::ClosedForm { d2, .. } => d2(r),
            ProfileInner::Spline(s) => s.d2(r),
        }
    }

    /// ψ'''. Analytic for closed forms; for splines this is the piecewise
    /// constant of the fitted cubic, valid only as a fallback.
    pub fn d3(&self, r: f64) -> f64 {
        match &self.inner {
            ProfileInner::ClosedForm { d3, .. } => d3(r),
            ProfileInner::Spline(s) => s.d3(r),
        }
    }
}

impl std::fmt::Debug for WarpingProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WarpingProfile")
            .field("interval", &self.interval)
            .field("representation", &self.representation())
            .finish_non_exhaustive()
    }
}
