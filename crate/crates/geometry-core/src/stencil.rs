//! Central finite-difference stencils used by every derivative in this crate.

use crate::error::GeometryError;

/// Truncation order of the central stencils.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StencilOrder {
    Two,
    Four,
}

/// Finite-difference configuration: step, order, and a tolerance baseline
/// that downstream checks scale from.
#[derive(Debug, Clone, Copy)]
pub struct StencilConfig {
    /// Step in chart units.
    pub h: f64,
    pub order: StencilOrder,
    /// Baseline tolerance for residual checks performed at this stencil.
    pub tolerance_scale: f64,
}

impl Default for StencilConfig {
    fn default() -> Self {
        Self {
            h: 1e-2,
            order: StencilOrder::Four,
            tolerance_scale: 1e-4,
        }
    }
}

impl StencilConfig {
    pub fn order_two(h: f64) -> Self {
        Self {
            h,
            order: StencilOrder::Two,
            tolerance_scale: 1e-4,
        }
    }

    pub fn order_four(h: f64) -> Self {
        Self {
            h,
            order: StencilOrder::Four,
            tolerance_scale: 1e-4,
        }
    }

    /// Same stencil with the step halved (Richardson refinement).
    pub fn halved(&self) -> Self {
        Self { h: self.h / 2.0, ..*self }
    }

    /// How far a single differentiation pass reaches from the center point.
    pub fn reach(&self) -> f64 {
        match self.order {
            StencilOrder::Two => self.h,
            StencilOrder::Four => 2.0 * self.h,
        }
    }
}

/// First partial along `axis` of a vector-valued map, central stencil.
///
/// The map is evaluated at shifted copies of `x`; the caller is responsible
/// for having checked that all nodes stay inside the domain.
pub(crate) fn partial_vec<E>(
    eval: &mut E,
    x: &[f64],
    axis: usize,
    cfg: &StencilConfig,
) -> Result<Vec<f64>, GeometryError>
where
    E: FnMut(&[f64]) -> Result<Vec<f64>, GeometryError>,
{
    let h = cfg.h;
    let mut at = |t: f64| -> Result<Vec<f64>, GeometryError> {
        let mut p = x.to_vec();
        p[axis] += t;
        eval(&p)
    };
    match cfg.order {
        StencilOrder::Two => {
            let fp = at(h)?;
            let fm = at(-h)?;
            Ok(fp
                .iter()
                .zip(&fm)
                .map(|(a, b)| (a - b) / (2.0 * h))
                .collect())
        }
        StencilOrder::Four => {
            let f2p = at(2.0 * h)?;
            let fp = at(h)?;
            let fm = at(-h)?;
            let f2m = at(-2.0 * h)?;
            Ok((0..fp.len())
                .map(|i| (-f2p[i] + 8.0 * fp[i] - 8.0 * fm[i] + f2m[i]) / (12.0 * h))
                .collect())
        }
    }
}

/// First partial of a scalar map.
pub(crate) fn partial_scalar<E>(
    eval: &mut E,
    x: &[f64],
    axis: usize,
    cfg: &StencilConfig,
) -> f64
where
    E: FnMut(&[f64]) -> f64,
{
    let mut wrapped = |p: &[f64]| -> Result<Vec<f64>, GeometryError> { Ok(vec![eval(p)]) };
    partial_vec(&mut wrapped, x, axis, cfg).expect("infallible scalar eval")[0]
}

/// Second partial of a scalar map. Same-axis uses the direct central formula;
/// mixed axes nest two first-derivative passes.
pub(crate) fn second_partial_scalar<E>(
    eval: &mut E,
    x: &[f64],
    i: usize,
    j: usize,
    cfg: &StencilConfig,
) -> f64
where
    E: FnMut(&[f64]) -> f64,
{
    let h = cfg.h;
    if i == j {
        let mut at = |t: f64| {
            let mut p = x.to_vec();
            p[i] += t;
            eval(&p)
        };
        match cfg.order {
            StencilOrder::Two => (at(h) - 2.0 * at(0.0) + at(-h)) / (h * h),
            StencilOrder::Four => {
                (-at(2.0 * h) + 16.0 * at(h) - 30.0 * at(0.0) + 16.0 * at(-h) - at(-2.0 * h))
                    / (12.0 * h * h)
            }
        }
    } else {
        let mut inner = |p: &[f64]| -> f64 {
            let mut owned = p.to_vec();
            let mut at = |t: f64| {
                owned[j] += t;
                let v = eval(&owned);
                owned[j] -= t;
                v
            };
            match cfg.order {
                StencilOrder::Two => (at(h) - at(-h)) / (2.0 * h),
                StencilOrder::Four => {
                    (-at(2.0 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2.0 * h)) / (12.0 * h)
                }
            }
        };
        partial_scalar(&mut inner, x, i, cfg)
    }
}
