//! Radial reductions of the gradient Einstein-type equation and the
//! identities its solutions satisfy.
//!
//! Every residual here is a function of r built from the warped closed
//! forms: mixed tensor components vanish identically for radial data on a
//! warped product, so the radial and fiber-diagonal components exhaust the
//! content.

use warped_geometry::{RadialField, Representation, WarpedMetric, WarpingProfile};

use crate::error::SolitonError;
use crate::params::ReducedParams;

/// Options for the identities that need third derivatives of the data.
#[derive(Debug, Clone, Copy)]
pub struct IdentityOptions {
    /// Accept piecewise spline third derivatives (widened tolerance).
    pub spline_fallback: bool,
}

impl Default for IdentityOptions {
    fn default() -> Self {
        Self {
            spline_fallback: true,
        }
    }
}

/// The conformal factor of the reduced equation: φ = F'' − c·F'².
pub fn phi(field: &RadialField, c: f64, r: f64) -> Result<f64, SolitonError> {
    field.check_radius(r)?;
    let f1 = field.d1(r);
    Ok(field.d2(r) - c * f1 * f1)
}

/// φ' = F''' − 2c·F'·F''.
pub fn phi_prime(field: &RadialField, c: f64, r: f64) -> Result<f64, SolitonError> {
    field.check_radius(r)?;
    Ok(field.d3(r) - 2.0 * c * field.d1(r) * field.d2(r))
}

/// φ'' = F'''' − 2c·F''² − 2c·F'·F'''. For spline fields F'''' is the
/// exact (zero) fourth derivative of the cubic piece.
pub fn phi_second(field: &RadialField, c: f64, r: f64) -> Result<f64, SolitonError> {
    field.check_radius(r)?;
    let f2 = field.d2(r);
    Ok(field.d4(r) - 2.0 * c * f2 * f2 - 2.0 * c * field.d1(r) * field.d3(r))
}

/// The warping a potential induces: ψ = F'·e^{−cF}.
pub fn psi_from_potential(field: &RadialField, c: f64, r: f64) -> Result<f64, SolitonError> {
    field.check_radius(r)?;
    Ok(field.d1(r) * (-c * field.value(r)).exp())
}

/// Warping profile ψ = F'·e^{−cF} with derivatives taken algebraically
/// from the field's derivative levels:
///   ψ'   = (F'' − cF'²)·e^{−cF}
///   ψ''  = (F''' − 3cF'F'' + c²F'³)·e^{−cF}
///   ψ''' = (F'''' − 3cF''² − 4cF'F''' + 6c²F'²F'' − c³F'⁴)·e^{−cF}
/// Requires F' > 0 on the interval.
pub fn profile_from_potential(
    field: &RadialField,
    c: f64,
) -> Result<WarpingProfile, SolitonError> {
    let (f0, f1, f2, f3) = (
        field.clone(),
        field.clone(),
        field.clone(),
        field.clone(),
    );
    Ok(WarpingProfile::closed_form(
        "from-potential",
        vec![("c".into(), c)],
        field.interval(),
        move |r| f0.d1(r) * (-c * f0.value(r)).exp(),
        move |r| {
            let d1 = f1.d1(r);
            (f1.d2(r) - c * d1 * d1) * (-c * f1.value(r)).exp()
        },
        move |r| {
            let d1 = f2.d1(r);
            (f2.d3(r) - 3.0 * c * d1 * f2.d2(r) + c * c * d1 * d1 * d1)
                * (-c * f2.value(r)).exp()
        },
        move |r| {
            let d1 = f3.d1(r);
            let d2 = f3.d2(r);
            let d3 = f3.d3(r);
            (f3.d4(r) - 3.0 * c * d2 * d2 - 4.0 * c * d1 * d3
                + 6.0 * c * c * d1 * d1 * d2
                - c * c * c * d1 * d1 * d1 * d1)
                * (-c * f3.value(r)).exp()
        },
    )?)
}

/// Mismatch of the two eigen-blocks of ∇∇F − c·dF⊗dF against each other's
/// value of the conformal factor:
///   radial = F'' − c·F'² − F'ψ'/ψ   (radial block vs the fiber φ)
///   fiber  = F'ψ'/ψ − φ              (fiber block vs φ = F'' − cF'²)
/// Both vanish exactly when ψ = F'e^{−cF}.
pub fn einstein_type_residual(
    metric: &WarpedMetric,
    field: &RadialField,
    reduced: &ReducedParams,
    r: f64,
) -> Result<(f64, f64), SolitonError> {
    metric.check_radius(r)?;
    let c = reduced.c;
    let phi_radial = phi(field, c, r)?;
    let f1 = field.d1(r);
    let psi_ratio = metric.warping().d1(r) / metric.warping().value(r);
    let phi_fiber = f1 * psi_ratio;
    Ok((phi_radial - phi_fiber, phi_fiber - phi_radial))
}

/// Radial component of the first structure identity:
/// (n−1)φ' − (n−1)cφF' + Ric(∂r,∂r)·F'.
pub fn key1_residual(
    metric: &WarpedMetric,
    field: &RadialField,
    c: f64,
    r: f64,
) -> Result<f64, SolitonError> {
    let n = metric.dimension() as f64;
    let ric_rr = metric.ricci_radial(r)?;
    let f1 = field.d1(r);
    Ok((n - 1.0) * phi_prime(field, c, r)? - (n - 1.0) * c * phi(field, c, r)? * f1
        + ric_rr * f1)
}

fn check_smoothness(
    metric: &WarpedMetric,
    field: &RadialField,
    opts: &IdentityOptions,
) -> Result<bool, SolitonError> {
    let mut fallback = false;
    if field.representation() == Representation::SampledSpline {
        if !opts.spline_fallback {
            return Err(SolitonError::InsufficientSmoothness {
                what: "the potential's third derivative".into(),
            });
        }
        fallback = true;
    }
    if metric.warping().representation() == Representation::SampledSpline {
        if !opts.spline_fallback {
            return Err(SolitonError::InsufficientSmoothness {
                what: "the warping's third derivative".into(),
            });
        }
        fallback = true;
    }
    Ok(fallback)
}

/// d/dr of Ric(∂r,∂r) = −(n−1)ψ''/ψ; needs ψ'''.
fn ricci_radial_derivative(metric: &WarpedMetric, r: f64) -> f64 {
    let n = metric.dimension() as f64;
    let w = metric.warping();
    let psi = w.value(r);
    -(n - 1.0) * (w.d3(r) * psi - w.d2(r) * w.d1(r)) / (psi * psi)
}

/// Radial-radial and fiber-diagonal components of the differentiated
/// structure identity. Returns the residual pair; whether the spline
/// fallback was taken is reported through [`key2_residual_with_flag`].
pub fn key2_residual_components(
    metric: &WarpedMetric,
    field: &RadialField,
    c: f64,
    r: f64,
    opts: &IdentityOptions,
) -> Result<(f64, f64), SolitonError> {
    key2_residual_with_flag(metric, field, c, r, opts).map(|(pair, _)| pair)
}

pub fn key2_residual_with_flag(
    metric: &WarpedMetric,
    field: &RadialField,
    c: f64,
    r: f64,
    opts: &IdentityOptions,
) -> Result<((f64, f64), bool), SolitonError> {
    let fallback = check_smoothness(metric, field, opts)?;
    metric.check_radius(r)?;
    let n = metric.dimension() as f64;

    let f1 = field.d1(r);
    let p = phi(field, c, r)?;
    let p1 = phi_prime(field, c, r)?;
    let p2 = phi_second(field, c, r)?;
    let ric_rr = metric.ricci_radial(r)?;
    let ric_fib = metric.ricci_fiber(r)?;
    let ric_rr_prime = ricci_radial_derivative(metric, r);
    let psi_ratio = metric.warping().d1(r) / metric.warping().value(r);

    let rr = (n - 1.0) * p2 - (n - 1.0) * c * p1 * f1 - (n - 1.0) * c * p * p
        - (n - 1.0) * c * c * p * f1 * f1
        + ric_rr_prime * f1
        + p * ric_rr
        + c * ric_rr * f1 * f1;

    let fiber = (n - 1.0) * psi_ratio * p1 - (n - 1.0) * c * p * p
        + psi_ratio * (ric_rr - ric_fib) * f1
        + p * ric_fib;

    Ok(((rr, fiber), fallback))
}

/// Trace of the differentiated identity:
/// (n−1)Δφ − (n−1)c⟨∇φ,∇F⟩ − n(n−1)cφ² − (n−1)c²φ|∇F|²
///   + ½R'F' + φR + c·Ric(∂r,∂r)·F'²,
/// with Δφ = φ'' + (n−1)(ψ'/ψ)φ' and |∇F|² = F'².
pub fn key3_residual(
    metric: &WarpedMetric,
    field: &RadialField,
    c: f64,
    r: f64,
    opts: &IdentityOptions,
) -> Result<f64, SolitonError> {
    check_smoothness(metric, field, opts)?;
    metric.check_radius(r)?;
    let n = metric.dimension() as f64;

    let f1 = field.d1(r);
    let p = phi(field, c, r)?;
    let p1 = phi_prime(field, c, r)?;
    let p2 = phi_second(field, c, r)?;
    let psi_ratio = metric.warping().d1(r) / metric.warping().value(r);
    let laplace_phi = p2 + (n - 1.0) * psi_ratio * p1;
    let (scalar, scalar_prime) = metric.scalar_and_derivative(r)?;
    let ric_rr = metric.ricci_radial(r)?;

    Ok((n - 1.0) * laplace_phi - (n - 1.0) * c * p1 * f1
        - n * (n - 1.0) * c * p * p
        - (n - 1.0) * c * c * p * f1 * f1
        + 0.5 * scalar_prime * f1
        + p * scalar
        + c * ric_rr * f1 * f1)
}

/// The gradient-proportionality consequence of the complex structure:
/// φ' − c·φ·F'. Algebraically equal to e^{cF}·ψ'' for ψ = F'e^{−cF}, so it
/// vanishes exactly on the classified models where ψ is affine.
pub fn key4_residual(field: &RadialField, c: f64, r: f64) -> Result<f64, SolitonError> {
    Ok(phi_prime(field, c, r)? - c * phi(field, c, r)? * field.d1(r))
}

/// Right-hand side of the radial soliton equation: F''' = 3cF'F'' − c²F'³.
pub fn soliton_ode_rhs(state: [f64; 3], c: f64) -> f64 {
    let [_, f1, f2] = state;
    3.0 * c * f1 * f2 - c * c * f1 * f1 * f1
}

/// Recover λ from the reduced data: λ(r) = β·φ(r) − ρ·R(r).
pub fn lambda_recovery(
    reduced: &ReducedParams,
    rho: f64,
    metric: &WarpedMetric,
    field: &RadialField,
    r: f64,
) -> Result<f64, SolitonError> {
    let scalar = metric.scalar_curvature(r)?;
    Ok(reduced.beta * phi(field, reduced.c, r)? - rho * scalar)
}
