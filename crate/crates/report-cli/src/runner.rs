//! Command implementations: verify, classify, integrate, sweep, table.

use std::sync::Arc;

use soliton_engine::{
    build_model, classify, integrate_soliton_ode, key1_residual, key2_residual_with_flag,
    key3_residual, key4_residual, lookup, potential_field, profile_from_potential,
    soliton_type_table, CaseTag, IdentityOptions, OdeController, OdeOutcome, ReducedParams,
    ResidualReport, SolitonError, TheoremCase,
};
use warped_geometry::{
    FiberSpec, RadialField, Record, RecordKind, Representation, WarpedMetric,
};

use crate::config::{GridSpec, OutputFormat, Settings, Tolerances};
use crate::envelope::{ClassifierVerdict, ConfigEcho, ReportEnvelope};
use crate::error::CliError;
use crate::output::csv_number;

const DEFAULT_DIM: usize = 4;
const ALL_IDENTITIES: [&str; 7] = [
    "einstein-radial",
    "einstein-fiber",
    "key1",
    "key2-rr",
    "key2-fiber",
    "key3",
    "key4",
];

fn default_grid() -> GridSpec {
    GridSpec {
        start: 0.1,
        stop: 5.0,
        count: 100,
    }
}

fn dimension(settings: &Settings) -> Result<usize, CliError> {
    let dim = settings.dim.unwrap_or(DEFAULT_DIM);
    if dim <= 2 {
        return Err(CliError::Config(format!(
            "dimension must be at least 3, got {dim}"
        )));
    }
    Ok(dim)
}

/// The reduced constant from --c or from (--beta, --mu).
fn reduced_c(settings: &Settings) -> Result<Option<f64>, CliError> {
    if let Some(c) = settings.c {
        if let (Some(beta), Some(mu)) = (settings.beta, settings.mu) {
            if beta != 0.0 && (-mu / beta - c).abs() > 1e-12 * c.abs().max(1.0) {
                return Err(CliError::Config(format!(
                    "conflicting parameters: c = {c} but -mu/beta = {}",
                    -mu / beta
                )));
            }
        }
        return Ok(Some(c));
    }
    match (settings.beta, settings.mu) {
        (Some(beta), Some(mu)) => {
            if beta == 0.0 {
                return Err(CliError::Config(
                    "beta = 0: no reduced constant; use `classify` or the triviality check"
                        .into(),
                ));
            }
            Ok(Some(-mu / beta))
        }
        _ => Ok(None),
    }
}

fn case_from_settings(settings: &Settings) -> Result<TheoremCase, CliError> {
    let tag: CaseTag = settings
        .case
        .as_deref()
        .ok_or_else(|| CliError::Config("verify needs --case or --potential-file".into()))?
        .parse()?;
    let a = settings.a.unwrap_or(1.0);
    let b = settings.b.unwrap_or(0.0);
    let c1 = settings.c1.unwrap_or(1.0);
    let c = reduced_c(settings)?;
    match tag {
        CaseTag::I => Err(CliError::Config(
            "case I-nonexistent: with beta = 0 only trivial structures exist; nothing to verify"
                .into(),
        )),
        CaseTag::III => Err(CliError::Config(
            "case III-nonexistent: opposite signs admit no non-trivial structure; nothing to verify"
                .into(),
        )),
        CaseTag::IIA => {
            require_c_zero(c, "II-A")?;
            Ok(TheoremCase::cylinder(a, b)?)
        }
        CaseTag::IIB => {
            require_c_zero(c, "II-B")?;
            Ok(TheoremCase::euclidean(a, b)?)
        }
        CaseTag::IV => Ok(TheoremCase::rotational(a, c.unwrap_or(-1.0), c1)?),
    }
}

fn require_c_zero(c: Option<f64>, case: &str) -> Result<(), CliError> {
    match c {
        Some(c) if c != 0.0 => Err(CliError::Config(format!(
            "case {case} has mu = 0, so c must be 0 (got {c})"
        ))),
        _ => Ok(()),
    }
}

struct VerifyTarget {
    metric: WarpedMetric,
    field: RadialField,
    c: f64,
    case: Option<String>,
}

fn verification_target(settings: &Settings) -> Result<VerifyTarget, CliError> {
    if let Some(path) = &settings.potential_file {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        let record = Record::parse(&text)?;
        if record.kind != RecordKind::Potential {
            return Err(CliError::Config(format!(
                "{} is not a potential record",
                path.display()
            )));
        }
        let field = record.into_potential()?;
        let c = reduced_c(settings)?.ok_or_else(|| {
            CliError::Config("a potential file needs --c or --beta/--mu".into())
        })?;
        if field.min_slope(512) <= 0.0 {
            return Err(CliError::Config(
                "the supplied potential must have F' > 0 on its interval".into(),
            ));
        }
        let dim = dimension(settings)?;
        let metric = WarpedMetric::new(
            profile_from_potential(&field, c)?,
            FiberSpec::unit_sphere(dim - 1)?,
        )?;
        Ok(VerifyTarget {
            metric,
            field,
            c,
            case: None,
        })
    } else {
        let case = case_from_settings(settings)?;
        let dim = dimension(settings)?;
        let (metric, field) = build_model(&case, dim)?;
        let c = case.reduced_constant().expect("constructive case");
        Ok(VerifyTarget {
            metric,
            field,
            c,
            case: Some(case.tag().to_string()),
        })
    }
}

fn parse_identity_list(settings: &Settings) -> Result<Vec<String>, CliError> {
    let Some(list) = &settings.identities else {
        return Ok(ALL_IDENTITIES.iter().map(|s| s.to_string()).collect());
    };
    let mut out = Vec::new();
    for name in list {
        match name.as_str() {
            "einstein" => {
                out.push("einstein-radial".to_string());
                out.push("einstein-fiber".to_string());
            }
            "key2" => {
                out.push("key2-rr".to_string());
                out.push("key2-fiber".to_string());
            }
            known if ALL_IDENTITIES.contains(&known) => out.push(known.to_string()),
            unknown => {
                return Err(CliError::Config(format!(
                    "unknown identity `{unknown}`; known: einstein, key1, key2, key3, key4"
                )))
            }
        }
    }
    Ok(out)
}

fn config_echo(command: &str, settings: &Settings, tol: Tolerances, dim: usize) -> ConfigEcho {
    ConfigEcho {
        command: command.to_string(),
        case: settings.case.clone(),
        a: settings.a,
        b: settings.b,
        c1: settings.c1,
        c: settings.c,
        beta: settings.beta,
        mu: settings.mu,
        rho: settings.rho,
        dim,
        grid: settings.grid,
        tolerances: tol,
        potential_file: settings
            .potential_file
            .as_ref()
            .map(|p| p.display().to_string()),
        seed: settings.seed,
    }
}

/// Evaluate one named residual over the grid.
fn evaluate_identity(
    name: &str,
    target: &VerifyTarget,
    grid: &[f64],
    tol: &Tolerances,
) -> Result<ResidualReport, CliError> {
    let VerifyTarget {
        metric, field, c, ..
    } = target;
    let rp = ReducedParams::from_c(*c);
    let opts = IdentityOptions::default();
    let spline = field.representation() == Representation::SampledSpline
        || metric.warping().representation() == Representation::SampledSpline;
    let data_tol = if spline { tol.spline } else { tol.algebraic };

    let mut samples = Vec::with_capacity(grid.len());
    let mut fallback = false;
    for &r in grid {
        let value = match name {
            "einstein-radial" => {
                soliton_engine::einstein_type_residual(metric, field, &rp, r)?.0
            }
            "einstein-fiber" => {
                soliton_engine::einstein_type_residual(metric, field, &rp, r)?.1
            }
            "key1" => key1_residual(metric, field, *c, r)?,
            "key2-rr" => {
                let ((rr, _), used) = key2_residual_with_flag(metric, field, *c, r, &opts)?;
                fallback |= used;
                rr
            }
            "key2-fiber" => {
                let ((_, fib), used) = key2_residual_with_flag(metric, field, *c, r, &opts)?;
                fallback |= used;
                fib
            }
            "key3" => key3_residual(metric, field, *c, r, &opts)?,
            "key4" => key4_residual(field, *c, r)?,
            other => return Err(CliError::Config(format!("unknown identity `{other}`"))),
        };
        samples.push((r, value));
        if name == "key3" && spline {
            fallback = true;
        }
    }
    let tolerance = match name {
        "einstein-radial" | "einstein-fiber" => tol.algebraic,
        _ => data_tol,
    };
    Ok(ResidualReport::new(name, samples, tolerance, fallback))
}

/// Build the model (or load the potential), evaluate every requested
/// identity over the grid, and assemble the envelope.
pub fn run_verify(settings: &Settings) -> Result<(ReportEnvelope, String), CliError> {
    let started = std::time::Instant::now();
    let tol = Tolerances::from_settings(settings)?;
    let dim = dimension(settings)?;
    let target = verification_target(settings)?;

    let grid_spec = settings.grid.unwrap_or_else(default_grid);
    grid_spec.validate()?;
    let (r0, r1) = target.field.interval();
    if grid_spec.start < r0 || grid_spec.stop > r1 {
        return Err(CliError::Config(format!(
            "grid [{}, {}] leaves the model interval [{r0}, {r1}]",
            grid_spec.start, grid_spec.stop
        )));
    }
    let grid = grid_spec.points();

    let mut echo = config_echo("verify", settings, tol, dim);
    echo.case = target.case.clone().or_else(|| settings.case.clone());
    echo.c = Some(target.c);
    echo.grid = Some(grid_spec);
    let mut envelope = ReportEnvelope::new(echo);

    for name in parse_identity_list(settings)? {
        envelope.push_report(evaluate_identity(&name, &target, &grid, &tol)?);
    }
    envelope.timing_ms = started.elapsed().as_secs_f64() * 1e3;

    let rendered = match settings.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => envelope.to_json(),
        OutputFormat::Csv => {
            let mut csv = String::from("identity,r,residual\n");
            for report in &envelope.reports {
                for &(r, v) in &report.samples {
                    csv.push_str(&format!("{},{},{}\n", report.identity, r, csv_number(v)));
                }
            }
            csv
        }
    };
    Ok((envelope, rendered))
}

/// Classify a sign pattern; returns (human text, machine envelope).
pub fn run_classify(settings: &Settings) -> Result<(String, ReportEnvelope), CliError> {
    let started = std::time::Instant::now();
    let beta = settings
        .beta
        .ok_or_else(|| CliError::Config("classify needs beta".into()))?;
    let mu = settings
        .mu
        .ok_or_else(|| CliError::Config("classify needs mu".into()))?;
    let tags = classify(beta, mu)?;
    let c = (beta != 0.0).then(|| -mu / beta);

    let text = match tags.as_slice() {
        [CaseTag::I] => "Case I: trivial only (beta = 0 forces a constant potential)".to_string(),
        [CaseTag::III] => format!(
            "Case III: no non-trivial structure (opposite signs, c = {})",
            c.expect("beta nonzero in case III")
        ),
        [CaseTag::IV] => format!(
            "Case IV: rotationally symmetric model, c = {}",
            c.expect("beta nonzero in case IV")
        ),
        [CaseTag::IIA, CaseTag::IIB] => {
            "Case II: cylinder (A) or complex Euclidean (B), c = 0".to_string()
        }
        other => format!("cases: {other:?}"),
    };

    let tol = Tolerances::from_settings(settings)?;
    let dim = dimension(settings)?;
    let mut envelope = ReportEnvelope::new(config_echo("classify", settings, tol, dim));
    envelope.classifier.push(ClassifierVerdict {
        beta,
        mu,
        cases: tags.iter().map(|t| t.to_string()).collect(),
        c,
        model_available: tags
            .iter()
            .any(|t| matches!(t, CaseTag::IIA | CaseTag::IIB | CaseTag::IV)),
    });
    envelope.timing_ms = started.elapsed().as_secs_f64() * 1e3;
    Ok((text, envelope))
}

/// Integrate the radial equation; returns (csv, optional stderr note).
pub fn run_integrate(settings: &Settings) -> Result<(String, Option<String>), CliError> {
    let c = reduced_c(settings)?
        .ok_or_else(|| CliError::Config("integrate needs --c or --beta/--mu".into()))?;
    let grid_spec = settings.grid.unwrap_or(GridSpec {
        start: 0.1,
        stop: 10.0,
        count: 200,
    });
    grid_spec.validate()?;

    // closed-form reference when parameters pin one down
    let reference: Option<RadialField> = if settings.a.is_some() && settings.c1.is_some() {
        let case = TheoremCase::rotational(
            settings.a.unwrap(),
            c,
            settings.c1.unwrap(),
        )?;
        Some(potential_field(
            &case,
            (grid_spec.start * 0.5, grid_spec.stop * 1.1),
        )?)
    } else {
        None
    };

    let init = match (settings.init, &reference) {
        (Some(init), _) => init,
        (None, Some(field)) => {
            let r0 = grid_spec.start;
            [field.value(r0), field.d1(r0), field.d2(r0)]
        }
        (None, None) => {
            return Err(CliError::Config(
                "integrate needs --init F,F',F'' (or case parameters to derive it)".into(),
            ))
        }
    };

    let controller = OdeController {
        rtol: settings.rtol.unwrap_or(1e-10),
        atol: settings.atol.unwrap_or(1e-12),
        ..OdeController::default()
    };
    if !(controller.rtol > 0.0) || !(controller.atol > 0.0) {
        return Err(CliError::Config("tolerances must be positive".into()));
    }

    let solution = integrate_soliton_ode(c, init, (grid_spec.start, grid_spec.stop), &controller)
        .map_err(|e| match e {
            SolitonError::Stiffness { r, h } => CliError::IdentityFailure(format!(
                "integration stalled: step {h:.3e} underflowed; last good r = {r}"
            )),
            SolitonError::StepLimit { r } => CliError::IdentityFailure(format!(
                "integration exceeded the step budget; last good r = {r}"
            )),
            other => CliError::Config(other.to_string()),
        })?;
    let solution = Arc::new(solution);

    // quadratic closed form for c = 0 from the initial data
    let c0_reference = (c == 0.0).then(|| {
        let r0 = grid_spec.start;
        move |r: f64| init[0] + init[1] * (r - r0) + 0.5 * init[2] * (r - r0) * (r - r0)
    });

    let (_, covered_end) = solution.covered();
    let mut csv = String::from("r,F,dF,d2F,delta\n");
    for r in grid_spec.points() {
        if r > covered_end + 1e-12 {
            break;
        }
        let y = solution.eval(r);
        let delta = match (&reference, &c0_reference) {
            (Some(field), _) => Some(y[0] - field.value(r)),
            (None, Some(f)) => Some(y[0] - f(r)),
            (None, None) => None,
        };
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            r,
            csv_number(y[0]),
            csv_number(y[1]),
            csv_number(y[2]),
            delta.map(csv_number).unwrap_or_default()
        ));
    }

    let note = match solution.outcome() {
        OdeOutcome::Completed => None,
        OdeOutcome::DomainExit { r } => Some(format!(
            "note: F' crossed zero at r = {r:.6}; output truncated there"
        )),
    };
    Ok((csv, note))
}

const SWEEP_RESIDUALS: [&str; 8] = [
    "einstein-radial",
    "einstein-fiber",
    "key1",
    "key2-rr",
    "key2-fiber",
    "key3",
    "key4",
    "scalar-curvature",
];

fn sweep_value(
    name: &str,
    metric: &WarpedMetric,
    field: &RadialField,
    c: f64,
    r: f64,
) -> Result<f64, CliError> {
    let rp = ReducedParams::from_c(c);
    let opts = IdentityOptions::default();
    Ok(match name {
        "einstein-radial" => soliton_engine::einstein_type_residual(metric, field, &rp, r)?.0,
        "einstein-fiber" => soliton_engine::einstein_type_residual(metric, field, &rp, r)?.1,
        "key1" => key1_residual(metric, field, c, r)?,
        "key2-rr" => key2_residual_with_flag(metric, field, c, r, &opts)?.0 .0,
        "key2-fiber" => key2_residual_with_flag(metric, field, c, r, &opts)?.0 .1,
        "key3" => key3_residual(metric, field, c, r, &opts)?,
        "key4" => key4_residual(field, c, r)?,
        "scalar-curvature" => metric.scalar_curvature(r)?,
        other => return Err(CliError::Config(format!("unknown residual `{other}`"))),
    })
}

/// Residual matrix over (parameter grid or random suite) x r grid.
pub fn run_sweep(settings: &Settings) -> Result<String, CliError> {
    let residual = settings
        .residual
        .as_deref()
        .ok_or_else(|| CliError::Config("sweep needs --residual".into()))?;
    if !SWEEP_RESIDUALS.contains(&residual) {
        return Err(CliError::Config(format!(
            "unknown residual `{residual}`; known: {}",
            SWEEP_RESIDUALS.join(", ")
        )));
    }
    let grid_spec = settings.grid.unwrap_or(GridSpec {
        start: 0.1,
        stop: 5.0,
        count: 50,
    });
    grid_spec.validate()?;
    let dim = dimension(settings)?;

    let mut csv = String::from("param,value,r,residual\n");

    if let Some(count) = settings.suite {
        // random solution-family sweep
        let seed = settings.seed.unwrap_or(0xe7a5eed);
        let family = soliton_engine::samples::solution_family(seed, count, (0.5, 2.5))?;
        for inst in &family {
            for r in grid_points_within(&grid_spec, inst.field.interval()) {
                let v = sweep_value(residual, &inst.metric, &inst.field, inst.c, r)?;
                csv.push_str(&format!(
                    "instance,{},{},{}\n",
                    inst.index,
                    r,
                    csv_number(v)
                ));
            }
        }
        return Ok(csv);
    }

    let param = settings
        .param
        .as_deref()
        .ok_or_else(|| CliError::Config("sweep needs --param with --range, or --suite".into()))?;
    let range = settings
        .range
        .ok_or_else(|| CliError::Config("sweep needs --range lo:hi:count".into()))?;
    if !["a", "b", "c", "c1"].contains(&param) {
        return Err(CliError::Config(format!(
            "unknown sweep parameter `{param}`; known: a, b, c, c1"
        )));
    }

    for value in range_points(&range) {
        let mut varied = settings.clone();
        match param {
            "a" => varied.a = Some(value),
            "b" => varied.b = Some(value),
            "c" => {
                varied.c = Some(value);
                varied.beta = None;
                varied.mu = None;
            }
            "c1" => varied.c1 = Some(value),
            _ => unreachable!(),
        }
        let case = case_from_settings(&varied)?;
        let (metric, field) = build_model(&case, dim)?;
        let c = case.reduced_constant().expect("constructive");
        for r in grid_points_within(&grid_spec, field.interval()) {
            let v = sweep_value(residual, &metric, &field, c, r)?;
            csv.push_str(&format!("{},{},{},{}\n", param, value, r, csv_number(v)));
        }
    }
    Ok(csv)
}

/// Like GridSpec::points but clipped to an interval.
fn grid_points_within(spec: &GridSpec, interval: (f64, f64)) -> Vec<f64> {
    spec.points()
        .into_iter()
        .filter(|&r| r >= interval.0 && r <= interval.1)
        .collect()
}

/// Parameter range points; unlike r-grids these may be negative.
fn range_points(range: &GridSpec) -> Vec<f64> {
    (0..range.count)
        .map(|i| range.start + (range.stop - range.start) * i as f64 / (range.count - 1) as f64)
        .collect()
}

/// The soliton-type parameter table, as text, JSON, or CSV.
pub fn run_table(settings: &Settings) -> Result<String, CliError> {
    let dim = dimension(settings)?;
    let k = settings.k.unwrap_or(2.0);
    let entries = match &settings.soliton_type {
        Some(name) => vec![lookup(name, Some(dim), Some(k))?],
        None => soliton_type_table(dim, k)?,
    };
    Ok(match settings.format.unwrap_or(OutputFormat::Json) {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&entries).expect("table serializes") + "\n"
        }
        OutputFormat::Csv => {
            let mut csv = String::from("name,alpha,beta,mu,rho,lambda\n");
            for e in &entries {
                let lambda = match &e.lambda {
                    soliton_engine::LambdaSemantics::Constant => "constant".to_string(),
                    soliton_engine::LambdaSemantics::Unconstrained => "unconstrained".to_string(),
                    soliton_engine::LambdaSemantics::SigmaKMinusNu { k } => {
                        format!("sigma_{k} - nu")
                    }
                };
                csv.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    e.name, e.alpha, e.beta, e.mu, e.rho, lambda
                ));
            }
            csv
        }
    })
}
