//! Acceptance suite: one test per criterion, one pass line each.
//! Run with `cargo test -p report-cli --test acceptance -- --nocapture`.

use std::process::Command;
use std::sync::Arc;

use geometry_core::{
    curvature, ricci_identity_residual, CoordinatePatch, ScalarField, StencilConfig,
};
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use soliton_engine::{
    build_model, classify, integrate_soliton_ode, key1_residual, key2_residual_components,
    key3_residual, key4_residual, lambda_recovery, potential_field, profile_from_potential,
    samples, schouten_sigma_k, triviality_check_beta_zero, CaseTag, IdentityOptions,
    OdeController, ReducedParams, TheoremCase, TrivialityVerdict,
};
use warped_geometry::{FiberChart, FiberSpec, RadialField, WarpedMetric, WarpingProfile};

fn grid(interval: (f64, f64), count: usize) -> Vec<f64> {
    let (a, b) = interval;
    (0..count)
        .map(|i| a + (b - a) * i as f64 / (count - 1) as f64)
        .collect()
}

fn pass(criterion: usize, name: &str) {
    println!("acceptance criterion {criterion:>2} ({name}): PASS");
}

/// Criterion 1: the classifier reproduces the four sign patterns exactly
/// and is invariant under a global sign flip.
#[test]
fn c01_classifier_table() {
    let p = 2.5f64;
    let n = -1.5f64;
    assert_eq!(classify(0.0, p).unwrap(), vec![CaseTag::I]);
    assert_eq!(
        classify(p, 0.0).unwrap(),
        vec![CaseTag::IIA, CaseTag::IIB]
    );
    assert_eq!(classify(p, p).unwrap(), vec![CaseTag::IV]);
    assert_eq!(classify(p, n).unwrap(), vec![CaseTag::III]);
    for &(beta, mu) in &[
        (0.0, p),
        (p, 0.0),
        (p, p),
        (p, n),
        (0.0, n),
        (n, 0.0),
        (n, n),
        (n, p),
        (1e-12, -7.0),
        (3.0, 1e-9),
    ] {
        if beta == 0.0 && mu == 0.0 {
            continue;
        }
        assert_eq!(
            classify(beta, mu).unwrap(),
            classify(-beta, -mu).unwrap(),
            "sign flip at ({beta}, {mu})"
        );
    }
    assert!(classify(0.0, 0.0).is_err());
    pass(1, "classifier table");
}

/// Criterion 2: dense ODE output matches the closed forms.
#[test]
fn c02_ode_closed_form_equivalence() {
    let controller = OdeController::default();

    let case = TheoremCase::rotational(1.0, -1.0, 1.0).unwrap();
    let field = potential_field(&case, (0.1, 10.0)).unwrap();
    let sol = Arc::new(
        integrate_soliton_ode(
            -1.0,
            [field.value(0.1), field.d1(0.1), field.d2(0.1)],
            (0.1, 10.0),
            &controller,
        )
        .unwrap(),
    );
    let mut worst = 0.0f64;
    for r in grid((0.1, 10.0), 1000) {
        worst = worst.max((sol.eval(r)[0] - field.value(r)).abs());
    }
    assert!(worst <= 1e-8, "rotational max delta {worst:e}");

    // c = 0: linear and quadratic recovery
    let b = 1.3;
    let d = 0.4;
    let sol = Arc::new(
        integrate_soliton_ode(0.0, [b * 0.1 + d, b, 0.0], (0.1, 10.0), &controller).unwrap(),
    );
    let mut worst_lin = 0.0f64;
    for r in grid((0.1, 10.0), 500) {
        worst_lin = worst_lin.max((sol.eval(r)[0] - (b * r + d)).abs());
    }
    assert!(worst_lin <= 1e-10, "linear max delta {worst_lin:e}");

    let a = 0.7;
    let sol = Arc::new(
        integrate_soliton_ode(
            0.0,
            [a * 0.01, 2.0 * a * 0.1, 2.0 * a],
            (0.1, 10.0),
            &controller,
        )
        .unwrap(),
    );
    let mut worst_quad = 0.0f64;
    for r in grid((0.1, 10.0), 500) {
        worst_quad = worst_quad.max((sol.eval(r)[0] - a * r * r).abs());
    }
    assert!(worst_quad <= 1e-10, "quadratic max delta {worst_quad:e}");
    pass(2, "closed-form/ODE equivalence");
}

/// Criterion 3: the structure identities hold on 54 random spline
/// solutions at every grid point, and the differentiated identity holds on
/// the closed-form cases.
#[test]
fn c03_solution_family_identities() {
    let family = samples::solution_family(0xacce97, 54, (0.5, 2.5)).unwrap();
    assert!(family.len() >= 50);
    let opts = IdentityOptions::default();
    for inst in &family {
        let rp = ReducedParams::from_c(inst.c);
        for &r in &grid((0.55, 2.45), 64) {
            let (rad, fib) =
                soliton_engine::einstein_type_residual(&inst.metric, &inst.field, &rp, r)
                    .unwrap();
            assert!(rad.abs() <= 1e-10, "einstein radial {rad:e}");
            assert!(fib.abs() <= 1e-10, "einstein fiber {fib:e}");
            let k1 = key1_residual(&inst.metric, &inst.field, inst.c, r).unwrap();
            assert!(k1.abs() <= 1e-6, "key1 {k1:e} (instance {})", inst.index);
            let k3 = key3_residual(&inst.metric, &inst.field, inst.c, r, &opts).unwrap();
            assert!(k3.abs() <= 1e-6, "key3 {k3:e} (instance {})", inst.index);
        }
    }

    // key2 on the closed-form cases across small parameter grids
    let mut cases = vec![];
    for &a in &[0.5, 1.0, 2.0] {
        cases.push(TheoremCase::cylinder(a, 0.3).unwrap());
        cases.push(TheoremCase::euclidean(a, -0.2).unwrap());
        for &c in &[-2.0, -1.0, -0.5] {
            for &c1 in &[0.5, 1.0] {
                cases.push(TheoremCase::rotational(a, c, c1).unwrap());
            }
        }
    }
    for case in &cases {
        let (metric, field) = build_model(case, 4).unwrap();
        let c = case.reduced_constant().unwrap();
        for &r in &grid((0.1, 8.0), 60) {
            let (rr, fib) = key2_residual_components(&metric, &field, c, r, &opts).unwrap();
            assert!(
                rr.abs() <= 1e-9 && fib.abs() <= 1e-9,
                "key2 on {:?} at r={r}: ({rr:e}, {fib:e})",
                case.tag()
            );
        }
    }
    pass(3, "solution-family identity suite");
}

/// Criterion 4: key4 equals e^{cF}·ψ'' exactly across the random suite.
#[test]
fn c04_key4_psi_identity() {
    let family = samples::solution_family(0xacce98, 54, (0.5, 2.5)).unwrap();
    for inst in &family {
        let profile = profile_from_potential(&inst.field, inst.c).unwrap();
        for &r in &grid((0.55, 2.45), 64) {
            let key4 = key4_residual(&inst.field, inst.c, r).unwrap();
            let scaled = (inst.c * inst.field.value(r)).exp() * profile.d2(r);
            assert!(
                (key4 - scaled).abs() <= 1e-12,
                "instance {} r={r}: |{key4:e} - {scaled:e}|",
                inst.index
            );
        }
    }
    pass(4, "key4-psi'' identity");
}

/// Criterion 5: finite-difference curvature of the realized patches
/// matches the warped closed forms, and halving the order-2 stencil
/// improves the error by at least 3.5x.
#[test]
fn c05_cross_oracle_curvature() {
    let cfg = StencilConfig::default();
    let fiber = FiberSpec::unit_sphere(3).unwrap();
    let angles = [1.2, 1.4, 2.0];

    let targets: Vec<(WarpedMetric, f64, f64)> = vec![
        (
            WarpedMetric::new(
                WarpingProfile::constant(1.3, (0.1, 3.0)).unwrap(),
                fiber,
            )
            .unwrap(),
            1.5,
            6.0 / (1.3 * 1.3),
        ),
        (
            WarpedMetric::new(
                WarpingProfile::linear(1.0, 0.0, (0.5, 3.0)).unwrap(),
                fiber,
            )
            .unwrap(),
            1.5,
            0.0,
        ),
        (
            WarpedMetric::new(
                WarpingProfile::sine((0.3, std::f64::consts::PI - 0.3)).unwrap(),
                fiber,
            )
            .unwrap(),
            1.2,
            12.0,
        ),
    ];

    let mut ratios = Vec::new();
    for (metric, r, expected) in &targets {
        let patch = metric.to_patch(FiberChart::SphericalPolar).unwrap();
        let mut point = vec![*r];
        point.extend_from_slice(&angles);
        let scalar = curvature(&patch, &point, &cfg).unwrap().scalar();
        assert!(
            (scalar - expected).abs() <= 1e-4,
            "scalar {scalar} vs {expected}"
        );

        // halving study at order 2, where truncation dominates
        let coarse = StencilConfig::order_two(1e-2);
        let err = |c: &StencilConfig| {
            (curvature(&patch, &point, c).unwrap().scalar() - expected).abs()
        };
        let e0 = err(&coarse);
        let e1 = err(&coarse.halved());
        if e0 > 1e-10 {
            ratios.push(e0 / e1);
        }
    }
    ratios.sort_by(f64::total_cmp);
    let median = ratios[ratios.len() / 2];
    assert!(
        median >= 3.5,
        "median halving improvement {median:.2} (ratios {ratios:?})"
    );
    pass(5, "cross-oracle curvature");
}

/// Random polynomial of total degree <= 3 with analytic derivatives.
fn random_cubic_field(rng: &mut ChaCha8Rng, dim: usize) -> ScalarField {
    let mut monomials: Vec<(f64, Vec<usize>)> = Vec::new();
    for _ in 0..6 {
        let coef = rng.gen_range(-0.5..0.5);
        let mut degrees = vec![0usize; dim];
        for _ in 0..rng.gen_range(1..=3usize) {
            degrees[rng.gen_range(0..dim)] += 1;
        }
        monomials.push((coef, degrees));
    }
    let eval_mono = |coef: f64, degrees: &[usize], p: &[f64]| -> f64 {
        coef * degrees
            .iter()
            .zip(p)
            .map(|(&d, &x)| x.powi(d as i32))
            .product::<f64>()
    };
    let m0 = monomials.clone();
    let m1 = monomials.clone();
    let m2 = monomials;
    ScalarField::new(move |p: &[f64]| {
        m0.iter().map(|(c, d)| eval_mono(*c, d, p)).sum::<f64>()
    })
    .with_gradient(move |p: &[f64]| {
        (0..p.len())
            .map(|axis| {
                m1.iter()
                    .map(|(c, d)| {
                        if d[axis] == 0 {
                            0.0
                        } else {
                            let mut dd = d.clone();
                            dd[axis] -= 1;
                            eval_mono(c * d[axis] as f64, &dd, p)
                        }
                    })
                    .sum::<f64>()
            })
            .collect()
    })
    .with_second_partials(move |p: &[f64]| {
        let n = p.len();
        DMatrix::from_fn(n, n, |i, j| {
            m2.iter()
                .map(|(c, d)| {
                    if d[i] == 0 {
                        return 0.0;
                    }
                    let mut dd = d.clone();
                    let mut coef = *c * dd[i] as f64;
                    dd[i] -= 1;
                    if dd[j] == 0 {
                        return 0.0;
                    }
                    coef *= dd[j] as f64;
                    dd[j] -= 1;
                    eval_mono(coef, &dd, p)
                })
                .sum::<f64>()
        })
    })
}

/// Smooth perturbed-flat metric with amplitude 0.1.
fn random_bump_metric(rng: &mut ChaCha8Rng, dim: usize) -> CoordinatePatch {
    let mut modes = Vec::new();
    for _ in 0..3 {
        let direction: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm = direction.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-6);
        let direction: Vec<f64> = direction.iter().map(|x| x / norm).collect();
        let wave: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.2..1.2)).collect();
        let phase: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        modes.push((direction, wave, phase));
    }
    CoordinatePatch::new(dim, vec![(-1.0, 1.0); dim], 0.1, move |p: &[f64]| {
        let n = p.len();
        let mut g = DMatrix::identity(n, n);
        for (direction, wave, phase) in &modes {
            let arg: f64 = wave.iter().zip(p).map(|(w, x)| w * x).sum::<f64>() + phase;
            let s = 0.1 / 3.0 * arg.sin();
            for i in 0..n {
                for j in 0..n {
                    g[(i, j)] += s * direction[i] * direction[j];
                }
            }
        }
        g
    })
    .unwrap()
}

/// Criterion 6: the Ricci-identity residual stays below 1e-4 over 50+
/// random smooth patch/field pairs at the default stencil.
#[test]
fn c06_ricci_identity_self_test() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce99);
    let cfg = StencilConfig::default();
    let mut worst = 0.0f64;
    for trial in 0..52 {
        let dim = if trial % 2 == 0 { 2 } else { 3 };
        let patch = random_bump_metric(&mut rng, dim);
        let field = random_cubic_field(&mut rng, dim);
        let point: Vec<f64> = (0..dim).map(|_| rng.gen_range(-0.6..0.6)).collect();
        let residual = ricci_identity_residual(&patch, &field, &point, &cfg).unwrap();
        for v in &residual {
            worst = worst.max(v.abs());
            assert!(v.abs() <= 1e-4, "trial {trial}: residual {v:e}");
        }
    }
    println!("  worst ricci-identity residual over the suite: {worst:.3e}");
    pass(6, "ricci-identity self-test");
}

/// Criterion 7: beta = 0 forces triviality for m in {2,3,4} on every
/// nonconstant test potential.
#[test]
fn c07_beta_zero_triviality() {
    let fields: Vec<RadialField> = vec![
        RadialField::closed_form(
            "identity",
            (0.1, 3.0),
            |r| r,
            |_| 1.0,
            |_| 0.0,
            |_| 0.0,
            |_| 0.0,
        )
        .unwrap(),
        RadialField::closed_form(
            "square",
            (0.1, 3.0),
            |r| r * r,
            |r| 2.0 * r,
            |_| 2.0,
            |_| 0.0,
            |_| 0.0,
        )
        .unwrap(),
        RadialField::closed_form(
            "exp",
            (0.1, 3.0),
            f64::exp,
            f64::exp,
            f64::exp,
            f64::exp,
            f64::exp,
        )
        .unwrap(),
    ];
    for m in [2usize, 3, 4] {
        for field in &fields {
            let report = triviality_check_beta_zero(m, field).unwrap();
            assert_eq!(
                report.verdict,
                TrivialityVerdict::ForcedTrivial,
                "m={m}, field {:?}",
                field
            );
            let expected = (2.0 * m as f64 - 1.0) * report.sup_slope_squared;
            assert!((report.residual - expected).abs() < 1e-12);
            assert!(report.residual > 0.0);
        }
    }
    pass(7, "beta-zero triviality");
}

/// Criterion 8: λ recovery is constant on the cylinder under Yamabe
/// parameters with λ + R = 0, and constant nonzero on the flat case under
/// conformal parameters.
#[test]
fn c08_lambda_constancy() {
    let rp = ReducedParams {
        c: 0.0,
        beta: 1.0,
        phi_rescaled: true,
    };

    let a = 1.0;
    let (metric, field) = build_model(&TheoremCase::cylinder(a, 0.0).unwrap(), 4).unwrap();
    let lambdas: Vec<f64> = grid((0.1, 9.0), 80)
        .iter()
        .map(|&r| lambda_recovery(&rp, 1.0, &metric, &field, r).unwrap())
        .collect();
    let first = lambdas[0];
    for (&lambda, &r) in lambdas.iter().zip(grid((0.1, 9.0), 80).iter()) {
        assert!((lambda - first).abs() <= 1e-8, "λ varies: {lambda} vs {first}");
        let scalar = metric.scalar_curvature(r).unwrap();
        assert!((lambda + scalar).abs() <= 1e-8, "λ + R = {}", lambda + scalar);
    }
    assert!((first + 6.0 / (a * a)).abs() <= 1e-8);

    let a = 0.8;
    let (metric, field) = build_model(&TheoremCase::euclidean(a, 0.0).unwrap(), 4).unwrap();
    let lambdas: Vec<f64> = grid((0.1, 9.0), 80)
        .iter()
        .map(|&r| lambda_recovery(&rp, 0.0, &metric, &field, r).unwrap())
        .collect();
    for &lambda in &lambdas {
        assert!((lambda - 2.0 * a).abs() <= 1e-8, "λ = {lambda} vs {}", 2.0 * a);
    }
    assert!(lambdas[0].abs() > 1e-3, "λ must be nonzero");
    pass(8, "lambda constancy");
}

/// Criterion 9: σ_k of the round unit sphere through the
/// finite-difference path.
#[test]
fn c09_sigma_k_round_sphere() {
    let metric = WarpedMetric::new(
        WarpingProfile::sine((0.3, std::f64::consts::PI - 0.3)).unwrap(),
        FiberSpec::unit_sphere(3).unwrap(),
    )
    .unwrap();
    let patch = metric.to_patch(FiberChart::SphericalPolar).unwrap();
    let point = [1.2, 1.1, 1.3, 2.0];
    let pack = curvature(&patch, &point, &StencilConfig::default()).unwrap();
    let g = patch.metric_at(&point).unwrap();
    // A = g/2 on the round sphere, so σ_k = C(4,k)/2^k
    let sigma1 = schouten_sigma_k(&pack, &g, 4, 1).unwrap();
    let sigma2 = schouten_sigma_k(&pack, &g, 4, 2).unwrap();
    assert!((sigma1 - 2.0).abs() <= 1e-6, "sigma_1 = {sigma1}");
    assert!((sigma2 - 1.5).abs() <= 1e-6, "sigma_2 = {sigma2}");
    pass(9, "sigma_k sanity");
}

/// Criterion 10: the CLI exercises all three exit codes and produces
/// byte-identical JSON modulo the timing field.
#[test]
fn c10_cli_contract() {
    let bin = env!("CARGO_BIN_EXE_etm");
    let dir = std::env::temp_dir().join(format!("etm-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    // exit 0: a passing verification
    let out = Command::new(bin)
        .args([
            "verify", "--case", "IV", "--a", "1", "--c", "-1", "--c1", "1", "--grid",
            "0.1:5:50",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));

    // exit 1: a potential that is Einstein-type but fails the key4 check
    let knots: Vec<f64> = grid((0.5, 2.5), 160);
    let values: Vec<String> = knots
        .iter()
        .map(|&r| (r + 0.2 * (1.3 * r).sin()).to_string())
        .collect();
    let record = format!(
        "schema = warped-record/1\nkind = potential\nrepresentation = sampled-spline\n\
         interval.start = 0.5\ninterval.end = 2.5\nknots.r = {}\nknots.value = {}\n",
        knots
            .iter()
            .map(f64::to_string)
            .collect::<Vec<_>>()
            .join(", "),
        values.join(", ")
    );
    let potential_path = dir.join("potential.rec");
    std::fs::write(&potential_path, record).unwrap();
    let out = Command::new(bin)
        .args([
            "verify",
            "--potential-file",
            potential_path.to_str().unwrap(),
            "--c",
            "0",
            "--grid",
            "0.6:2.4:40",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "stderr: {}", String::from_utf8_lossy(&out.stderr));

    // exit 2: configuration errors
    let out = Command::new(bin).args(["classify", "0", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(bin).args(["verify", "--case", "I"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    // determinism: identical configs give identical JSON modulo timing
    let run = |path: &std::path::Path| {
        let out = Command::new(bin)
            .args([
                "verify", "--case", "IV", "--a", "1", "--c", "-1", "--c1", "1", "--grid",
                "0.1:5:50", "--out",
            ])
            .arg(path)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        let mut value: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
        value["timing_ms"] = serde_json::Value::Null;
        value
    };
    let first = run(&dir.join("a.json"));
    let second = run(&dir.join("b.json"));
    assert_eq!(first, second, "reports must be deterministic modulo timing");

    std::fs::remove_dir_all(&dir).ok();
    pass(10, "CLI contract");
}
