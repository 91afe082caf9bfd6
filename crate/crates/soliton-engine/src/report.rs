use serde::Serialize;

/// A sampled residual with summary statistics. `pass` holds exactly when
/// the max-abs residual is within tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    pub identity: String,
    /// (r, residual) pairs over the sample grid.
    pub samples: Vec<(f64, f64)>,
    pub max_abs: f64,
    pub rms: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// True when a spline third derivative stood in for an analytic one.
    pub fallback_used: bool,
}

impl ResidualReport {
    pub fn new(
        identity: impl Into<String>,
        samples: Vec<(f64, f64)>,
        tolerance: f64,
        fallback_used: bool,
    ) -> Self {
        let max_abs = samples.iter().fold(0.0f64, |m, &(_, v)| m.max(v.abs()));
        let rms = if samples.is_empty() {
            0.0
        } else {
            (samples.iter().map(|&(_, v)| v * v).sum::<f64>() / samples.len() as f64).sqrt()
        };
        Self {
            identity: identity.into(),
            samples,
            max_abs,
            rms,
            tolerance,
            pass: max_abs <= tolerance,
            fallback_used,
        }
    }
}
