use crate::error::WarpedError;
use crate::fiber::FiberSpec;
use crate::profile::{Representation, WarpingProfile};
use crate::radial::RadialField;

/// Warped product g = dr² + ψ(r)²·g_fiber over an Einstein fiber.
#[derive(Debug, Clone)]
pub struct WarpedMetric {
    warping: WarpingProfile,
    fiber: FiberSpec,
}

impl WarpedMetric {
    pub fn new(warping: WarpingProfile, fiber: FiberSpec) -> Result<Self, WarpedError> {
        let n = fiber.dim() + 1;
        if n < 3 {
            return Err(WarpedError::DimensionTooSmall { n });
        }
        Ok(Self { warping, fiber })
    }

    pub fn warping(&self) -> &WarpingProfile {
        &self.warping
    }

    pub fn fiber(&self) -> &FiberSpec {
        &self.fiber
    }

    /// Total dimension n = fiber dimension + 1.
    pub fn dimension(&self) -> usize {
        self.fiber.dim() + 1
    }

    pub fn interval(&self) -> (f64, f64) {
        self.warping.interval()
    }

    pub fn check_radius(&self, r: f64) -> Result<(), WarpedError> {
        self.warping.check_radius(r)
    }

    /// Ric(∂r, ∂r) = −(n−1)·ψ''/ψ.
    pub fn ricci_radial(&self, r: f64) -> Result<f64, WarpedError> {
        self.check_radius(r)?;
        let n = self.dimension() as f64;
        Ok(-(n - 1.0) * self.warping.d2(r) / self.warping.value(r))
    }

    /// Ricci eigenvalue of a unit fiber direction:
    /// −ψ''/ψ − (n−2)(ψ'² − κ)/ψ².
    pub fn ricci_fiber(&self, r: f64) -> Result<f64, WarpedError> {
        self.check_radius(r)?;
        let n = self.dimension() as f64;
        let psi = self.warping.value(r);
        let dpsi = self.warping.d1(r);
        let ddpsi = self.warping.d2(r);
        let kappa = self.fiber.kappa();
        Ok(-ddpsi / psi - (n - 2.0) * (dpsi * dpsi - kappa) / (psi * psi))
    }

    /// Scalar curvature R = −2(n−1)ψ''/ψ + (n−1)(n−2)(κ − ψ'²)/ψ².
    pub fn scalar_curvature(&self, r: f64) -> Result<f64, WarpedError> {
        self.check_radius(r)?;
        Ok(self.scalar_raw(r))
    }

    fn scalar_raw(&self, r: f64) -> f64 {
        let n = self.dimension() as f64;
        let psi = self.warping.value(r);
        let dpsi = self.warping.d1(r);
        let ddpsi = self.warping.d2(r);
        let kappa = self.fiber.kappa();
        -2.0 * (n - 1.0) * ddpsi / psi
            + (n - 1.0) * (n - 2.0) * (kappa - dpsi * dpsi) / (psi * psi)
    }

    /// (R, R'). R' is analytic for closed-form profiles (uses ψ''');
    /// sampled profiles fall back to one-sided-safe finite differencing
    /// of R itself.
    pub fn scalar_and_derivative(&self, r: f64) -> Result<(f64, f64), WarpedError> {
        self.check_radius(r)?;
        let scalar = self.scalar_raw(r);
        let deriv = match self.warping.representation() {
            Representation::ClosedForm => {
                let n = self.dimension() as f64;
                let psi = self.warping.value(r);
                let d1 = self.warping.d1(r);
                let d2 = self.warping.d2(r);
                let d3 = self.warping.d3(r);
                let kappa = self.fiber.kappa();
                -2.0 * (n - 1.0) * (d3 * psi - d2 * d1) / (psi * psi)
                    + (n - 1.0) * (n - 2.0)
                        * (-2.0 * d1 * d2 / (psi * psi)
                            - 2.0 * d1 * (kappa - d1 * d1) / (psi * psi * psi))
            }
            Representation::SampledSpline => self.scalar_derivative_differenced(r),
        };
        Ok((scalar, deriv))
    }

    /// Five-point stencil of R, shifted to stay inside the interval near
    /// the ends.
    fn scalar_derivative_differenced(&self, r: f64) -> f64 {
        let (r0, r1) = self.interval();
        let h = ((r1 - r0) * 1e-3).min(1e-2);
        // center the stencil when possible, otherwise slide it inward
        let lo = r0.max(r.min(r1 - 4.0 * h) - 2.0 * h);
        let nodes: Vec<f64> = (0..5).map(|i| lo + i as f64 * h).collect();
        let values: Vec<f64> = nodes.iter().map(|&x| self.scalar_raw(x)).collect();
        // derivative of the degree-4 interpolant at r
        lagrange_derivative(&nodes, &values, r)
    }

    /// Covariant Hessian components of a radial field:
    /// (radial, unit fiber) = (F'', F'·ψ'/ψ).
    pub fn radial_hessian(
        &self,
        field: &RadialField,
        r: f64,
    ) -> Result<(f64, f64), WarpedError> {
        self.check_radius(r)?;
        field.check_radius(r)?;
        let radial = field.d2(r);
        let fiber = field.d1(r) * self.warping.d1(r) / self.warping.value(r);
        Ok((radial, fiber))
    }

    /// ΔF = F'' + (n−1)(ψ'/ψ)F', the metric trace of the radial Hessian.
    pub fn radial_laplacian(&self, field: &RadialField, r: f64) -> Result<f64, WarpedError> {
        let (radial, fiber) = self.radial_hessian(field, r)?;
        Ok(radial + (self.dimension() as f64 - 1.0) * fiber)
    }
}

fn lagrange_derivative(xs: &[f64], ys: &[f64], at: f64) -> f64 {
    let n = xs.len();
    let mut acc = 0.0;
    for i in 0..n {
        // derivative of the i-th Lagrange basis at `at`
        let mut basis_deriv = 0.0;
        for j in 0..n {
            if j == i {
                continue;
            }
            let mut term = 1.0 / (xs[i] - xs[j]);
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                term *= (at - xs[k]) / (xs[i] - xs[k]);
            }
            basis_deriv += term;
        }
        acc += ys[i] * basis_deriv;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiber::FiberSpec;
    use crate::profile::WarpingProfile;

    fn cylinder(a: f64, n_fiber: usize) -> WarpedMetric {
        WarpedMetric::new(
            WarpingProfile::constant(a, (0.1, 10.0)).unwrap(),
            FiberSpec::unit_sphere(n_fiber).unwrap(),
        )
        .unwrap()
    }

    fn cone(n_fiber: usize) -> WarpedMetric {
        WarpedMetric::new(
            WarpingProfile::linear(1.0, 0.0, (0.1, 10.0)).unwrap(),
            FiberSpec::unit_sphere(n_fiber).unwrap(),
        )
        .unwrap()
    }

    fn round_sphere_slice() -> WarpedMetric {
        WarpedMetric::new(
            WarpingProfile::sine((0.3, std::f64::consts::PI - 0.3)).unwrap(),
            FiberSpec::unit_sphere(3).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn ricci_radial_examples() {
        assert_eq!(cylinder(2.0, 3).ricci_radial(1.0).unwrap(), 0.0);
        assert_eq!(cone(3).ricci_radial(1.0).unwrap(), 0.0);
        let v = round_sphere_slice()
            .ricci_radial(std::f64::consts::FRAC_PI_4)
            .unwrap();
        assert!((v - 3.0).abs() < 1e-12);
    }

    #[test]
    fn ricci_fiber_examples() {
        assert!(cone(3).ricci_fiber(1.7).unwrap().abs() < 1e-12);
        let v = cylinder(2.0, 3).ricci_fiber(1.0).unwrap();
        assert!((v - 2.0 / 4.0).abs() < 1e-12);
        let v = round_sphere_slice().ricci_fiber(1.0).unwrap();
        assert!((v - 3.0).abs() < 1e-12);
    }

    #[test]
    fn scalar_examples() {
        let (r, dr) = cylinder(2.0, 3).scalar_and_derivative(1.0).unwrap();
        assert!((r - 6.0 / 4.0).abs() < 1e-12);
        assert!(dr.abs() < 1e-12);
        let (r, dr) = cone(3).scalar_and_derivative(2.0).unwrap();
        assert!(r.abs() < 1e-12 && dr.abs() < 1e-12);
        let (r, dr) = round_sphere_slice().scalar_and_derivative(1.2).unwrap();
        assert!((r - 12.0).abs() < 1e-11);
        assert!(dr.abs() < 1e-10);
    }

    #[test]
    fn spline_profile_scalar_derivative_fallback() {
        let xs: Vec<f64> = (0..300).map(|i| 0.3 + 2.4 * i as f64 / 299.0).collect();
        let ys: Vec<f64> = xs.iter().map(|&r| r.sin()).collect();
        let spline = WarpingProfile::from_samples(xs, ys).unwrap();
        let metric =
            WarpedMetric::new(spline, FiberSpec::unit_sphere(3).unwrap()).unwrap();
        let (r, dr) = metric.scalar_and_derivative(1.3).unwrap();
        assert!((r - 12.0).abs() < 1e-4, "R = {r}");
        assert!(dr.abs() < 1e-2, "R' = {dr}");
    }

    #[test]
    fn radial_hessian_and_laplacian() {
        // flat cone with F = r²/2: Hessian equals the metric
        let metric = cone(3);
        let field = RadialField::closed_form(
            "half-square",
            (0.1, 10.0),
            |r| 0.5 * r * r,
            |r| r,
            |_| 1.0,
            |_| 0.0,
            |_| 0.0,
        )
        .unwrap();
        let (h_r, h_f) = metric.radial_hessian(&field, 2.0).unwrap();
        assert!((h_r - 1.0).abs() < 1e-14 && (h_f - 1.0).abs() < 1e-14);
        assert!((metric.radial_laplacian(&field, 2.0).unwrap() - 4.0).abs() < 1e-14);

        // cylinder with linear F: parallel gradient
        let cyl = cylinder(1.5, 3);
        let linear = RadialField::closed_form(
            "linear",
            (0.1, 10.0),
            |r| 0.7 * r,
            |_| 0.7,
            |_| 0.0,
            |_| 0.0,
            |_| 0.0,
        )
        .unwrap();
        let (h_r, h_f) = cyl.radial_hessian(&linear, 3.0).unwrap();
        assert_eq!((h_r, h_f), (0.0, 0.0));
        assert_eq!(cyl.radial_laplacian(&linear, 3.0).unwrap(), 0.0);

        // rotational model potential on the unit cone at r = 1
        let log_field = RadialField::closed_form(
            "log-rotational",
            (0.1, 10.0),
            |r| (r * r / 2.0 + 1.0).ln(),
            |r| 2.0 * r / (r * r + 2.0),
            |r| (4.0 - 2.0 * r * r) / (r * r + 2.0).powi(2),
            |r| (4.0 * r * r * r - 24.0 * r) / (r * r + 2.0).powi(3),
            |r| (-12.0 * r.powi(4) + 144.0 * r * r - 48.0) / (r * r + 2.0).powi(4),
        )
        .unwrap();
        let (h_r, h_f) = metric.radial_hessian(&log_field, 1.0).unwrap();
        assert!((h_r - 2.0 / 9.0).abs() < 1e-14);
        assert!((h_f - 2.0 / 3.0).abs() < 1e-14);
        let lap = metric.radial_laplacian(&log_field, 1.0).unwrap();
        assert!((lap - 20.0 / 9.0).abs() < 1e-14);
    }

    #[test]
    fn laplacian_is_trace_of_hessian() {
        let metric = round_sphere_slice();
        let field = RadialField::closed_form(
            "exp",
            (0.3, std::f64::consts::PI - 0.3),
            f64::exp,
            f64::exp,
            f64::exp,
            f64::exp,
            f64::exp,
        )
        .unwrap();
        for i in 0..20 {
            let r = 0.4 + 2.2 * i as f64 / 19.0;
            let (h_r, h_f) = metric.radial_hessian(&field, r).unwrap();
            let lap = metric.radial_laplacian(&field, r).unwrap();
            assert_eq!(lap, h_r + 3.0 * h_f);
        }
    }

    #[test]
    fn out_of_domain_rejected() {
        let err = cylinder(1.0, 3).ricci_radial(11.0).unwrap_err();
        assert!(matches!(err, WarpedError::OutOfDomain { .. }));
    }
}
