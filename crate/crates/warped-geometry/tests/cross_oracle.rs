//! Closed-form warped curvature against the finite-difference engine.

use geometry_core::{curvature, gradient_data, ScalarField, StencilConfig};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use warped_geometry::{FiberChart, FiberSpec, RadialField, WarpedMetric, WarpingProfile};

/// Smooth positive random profile 1.5 + Σ aₖ sin(ωₖ r + φₖ) with analytic
/// derivatives.
fn random_profile(rng: &mut ChaCha8Rng, interval: (f64, f64)) -> WarpingProfile {
    let terms: Vec<(f64, f64, f64)> = (0..3)
        .map(|_| {
            (
                rng.gen_range(0.05..0.15),
                rng.gen_range(0.3..1.2),
                rng.gen_range(0.0..std::f64::consts::TAU),
            )
        })
        .collect();
    let t0 = terms.clone();
    let t1 = terms.clone();
    let t2 = terms.clone();
    let t3 = terms;
    WarpingProfile::closed_form(
        "random-trig",
        vec![],
        interval,
        move |r| {
            1.5 + t0
                .iter()
                .map(|&(a, w, p)| a * (w * r + p).sin())
                .sum::<f64>()
        },
        move |r| {
            t1.iter()
                .map(|&(a, w, p)| a * w * (w * r + p).cos())
                .sum::<f64>()
        },
        move |r| {
            -t2.iter()
                .map(|&(a, w, p)| a * w * w * (w * r + p).sin())
                .sum::<f64>()
        },
        move |r| {
            -t3.iter()
                .map(|&(a, w, p)| a * w * w * w * (w * r + p).cos())
                .sum::<f64>()
        },
    )
    .expect("positive by construction")
}

#[test]
fn randomized_profiles_agree_with_patch_curvature() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let cfg = StencilConfig::default();
    let interval = (0.5, 2.5);
    for trial in 0..20 {
        let profile = random_profile(&mut rng, interval);
        let metric = WarpedMetric::new(profile, FiberSpec::unit_sphere(3).unwrap()).unwrap();
        let patch = metric.to_patch(FiberChart::SphericalPolar).unwrap();
        let r = rng.gen_range(0.7..2.3);
        let point = [r, 1.2, 1.4, 2.0];

        let pack = curvature(&patch, &point, &cfg).unwrap();
        let g = patch.metric_at(&point).unwrap();

        let ric_rr = metric.ricci_radial(r).unwrap();
        let ric_fib = metric.ricci_fiber(r).unwrap();
        let (scalar, _) = metric.scalar_and_derivative(r).unwrap();

        assert!(
            (pack.ricci()[(0, 0)] - ric_rr).abs() < 1e-4,
            "trial {trial}: radial Ricci {} vs {}",
            pack.ricci()[(0, 0)],
            ric_rr
        );
        let fd_fiber = pack.ricci()[(1, 1)] / g[(1, 1)];
        assert!(
            (fd_fiber - ric_fib).abs() < 1e-4,
            "trial {trial}: fiber Ricci {fd_fiber} vs {ric_fib}"
        );
        assert!(
            (pack.scalar() - scalar).abs() < 1e-4,
            "trial {trial}: scalar {} vs {}",
            pack.scalar(),
            scalar
        );
    }
}

#[test]
fn scalar_derivative_matches_differenced_patch_scalar() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let cfg = StencilConfig::default();
    let profile = random_profile(&mut rng, (0.5, 2.5));
    let metric = WarpedMetric::new(profile, FiberSpec::unit_sphere(3).unwrap()).unwrap();
    let patch = metric.to_patch(FiberChart::SphericalPolar).unwrap();

    let r = 1.4;
    let delta = 0.02;
    let scalar_at = |x: f64| {
        curvature(&patch, &[x, 1.2, 1.4, 2.0], &cfg)
            .unwrap()
            .scalar()
    };
    let fd = (-scalar_at(r + 2.0 * delta) + 8.0 * scalar_at(r + delta) - 8.0 * scalar_at(r - delta)
        + scalar_at(r - 2.0 * delta))
        / (12.0 * delta);
    let (_, deriv) = metric.scalar_and_derivative(r).unwrap();
    assert!((fd - deriv).abs() < 1e-4, "R' {deriv} vs differenced {fd}");
}

#[test]
fn radial_laplacian_matches_patch_gradient_data() {
    let metric = WarpedMetric::new(
        WarpingProfile::linear(1.0, 0.0, (0.5, 3.0)).unwrap(),
        FiberSpec::unit_sphere(3).unwrap(),
    )
    .unwrap();
    let field = RadialField::closed_form(
        "log-rotational",
        (0.5, 3.0),
        |r| (r * r / 2.0 + 1.0).ln(),
        |r| 2.0 * r / (r * r + 2.0),
        |r| (4.0 - 2.0 * r * r) / (r * r + 2.0).powi(2),
        |r| (4.0 * r * r * r - 24.0 * r) / (r * r + 2.0).powi(3),
        |r| (-12.0 * r.powi(4) + 144.0 * r * r - 48.0) / (r * r + 2.0).powi(4),
    )
    .unwrap();

    let patch = metric.to_patch(FiberChart::SphericalPolar).unwrap();
    let scalar_field = {
        let f = field.clone();
        ScalarField::new(move |p: &[f64]| f.value(p[0]))
    };
    let r = 1.3;
    let data = gradient_data(
        &patch,
        &scalar_field,
        &[r, 1.2, 1.4, 2.0],
        &StencilConfig::default(),
    )
    .unwrap();
    let closed = metric.radial_laplacian(&field, r).unwrap();
    assert!(
        (data.laplacian - closed).abs() < 1e-4,
        "ΔF {} vs {}",
        data.laplacian,
        closed
    );
    assert!((data.norm_squared - field.d1(r).powi(2)).abs() < 1e-6);
}
