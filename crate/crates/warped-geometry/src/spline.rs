//! Cubic spline interpolation with analytic derivative evaluation.
//!
//! Not-a-knot end conditions by default, so sampling a smooth function at
//! moderately dense knots reproduces it to O(h⁴) including near the ends.
//! Clamped ends are available when the sampled function's end slopes are
//! known.

use nalgebra::{DMatrix, DVector};

use crate::error::WarpedError;

#[derive(Debug, Clone)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    /// Second derivatives ("moments") at the knots.
    m: Vec<f64>,
}

#[derive(Debug, Clone, Copy)]
pub enum EndCondition {
    NotAKnot,
    /// First derivatives at the two ends.
    Clamped(f64, f64),
}

impl CubicSpline {
    pub fn new(x: Vec<f64>, y: Vec<f64>, ends: EndCondition) -> Result<Self, WarpedError> {
        let n = x.len();
        if n < 4 {
            return Err(WarpedError::InvalidProfile(format!(
                "spline needs at least 4 knots, got {n}"
            )));
        }
        if y.len() != n {
            return Err(WarpedError::InvalidProfile(format!(
                "knot count mismatch: {} abscissae, {} values",
                n,
                y.len()
            )));
        }
        if !x.windows(2).all(|w| w[1] > w[0]) {
            return Err(WarpedError::InvalidProfile(
                "spline knots must be strictly increasing".into(),
            ));
        }

        let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
        let mut a = DMatrix::<f64>::zeros(n, n);
        let mut b = DVector::<f64>::zeros(n);

        for i in 1..n - 1 {
            a[(i, i - 1)] = h[i - 1] / 6.0;
            a[(i, i)] = (h[i - 1] + h[i]) / 3.0;
            a[(i, i + 1)] = h[i] / 6.0;
            b[i] = (y[i + 1] - y[i]) / h[i] - (y[i] - y[i - 1]) / h[i - 1];
        }
        match ends {
            EndCondition::NotAKnot => {
                // third-derivative continuity across the first and last
                // interior knots
                a[(0, 0)] = h[1];
                a[(0, 1)] = -(h[0] + h[1]);
                a[(0, 2)] = h[0];
                a[(n - 1, n - 3)] = h[n - 2];
                a[(n - 1, n - 2)] = -(h[n - 3] + h[n - 2]);
                a[(n - 1, n - 1)] = h[n - 3];
            }
            EndCondition::Clamped(d0, d1) => {
                a[(0, 0)] = h[0] / 3.0;
                a[(0, 1)] = h[0] / 6.0;
                b[0] = (y[1] - y[0]) / h[0] - d0;
                a[(n - 1, n - 2)] = h[n - 2] / 6.0;
                a[(n - 1, n - 1)] = h[n - 2] / 3.0;
                b[n - 1] = d1 - (y[n - 1] - y[n - 2]) / h[n - 2];
            }
        }

        let m = a
            .lu()
            .solve(&b)
            .ok_or_else(|| WarpedError::InvalidProfile("singular spline system".into()))?;
        Ok(Self {
            x,
            y,
            m: m.as_slice().to_vec(),
        })
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.x[0], *self.x.last().unwrap())
    }

    /// Index of the piece containing `r`; end pieces extend past the domain.
    fn piece(&self, r: f64) -> usize {
        let n = self.x.len();
        let idx = self.x.partition_point(|&k| k <= r);
        idx.clamp(1, n - 1) - 1
    }

    pub fn value(&self, r: f64) -> f64 {
        let i = self.piece(r);
        let h = self.x[i + 1] - self.x[i];
        let a = self.x[i + 1] - r;
        let b = r - self.x[i];
        self.m[i] * a * a * a / (6.0 * h)
            + self.m[i + 1] * b * b * b / (6.0 * h)
            + (self.y[i] / h - self.m[i] * h / 6.0) * a
            + (self.y[i + 1] / h - self.m[i + 1] * h / 6.0) * b
    }

    pub fn d1(&self, r: f64) -> f64 {
        let i = self.piece(r);
        let h = self.x[i + 1] - self.x[i];
        let a = self.x[i + 1] - r;
        let b = r - self.x[i];
        -self.m[i] * a * a / (2.0 * h)
            + self.m[i + 1] * b * b / (2.0 * h)
            + (self.y[i + 1] - self.y[i]) / h
            - (self.m[i + 1] - self.m[i]) * h / 6.0
    }

    pub fn d2(&self, r: f64) -> f64 {
        let i = self.piece(r);
        let h = self.x[i + 1] - self.x[i];
        (self.m[i] * (self.x[i + 1] - r) + self.m[i + 1] * (r - self.x[i])) / h
    }

    /// Piecewise-constant third derivative.
    pub fn d3(&self, r: f64) -> f64 {
        let i = self.piece(r);
        (self.m[i + 1] - self.m[i]) / (self.x[i + 1] - self.x[i])
    }

    pub fn knots(&self) -> (&[f64], &[f64]) {
        (&self.x, &self.y)
    }
}
