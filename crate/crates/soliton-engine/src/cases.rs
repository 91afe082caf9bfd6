//! The classification cases: sign-pattern classifier, closed-form
//! potentials, and model construction.

use serde::Serialize;
use warped_geometry::{FiberPreset, FiberSpec, RadialField, WarpedMetric};

use crate::error::SolitonError;
use crate::residuals::profile_from_potential;

/// Default interval for built models; the tip r = 0 is excluded because
/// polar charts are singular there.
pub const DEFAULT_MODEL_INTERVAL: (f64, f64) = (0.01, 10.0);

/// Outcome tags of the sign-pattern classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    #[serde(rename = "I-nonexistent")]
    I,
    #[serde(rename = "II-A-cylinder")]
    IIA,
    #[serde(rename = "II-B-euclidean")]
    IIB,
    #[serde(rename = "III-nonexistent")]
    III,
    #[serde(rename = "IV-rotational")]
    IV,
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CaseTag::I => "I-nonexistent",
            CaseTag::IIA => "II-A-cylinder",
            CaseTag::IIB => "II-B-euclidean",
            CaseTag::III => "III-nonexistent",
            CaseTag::IV => "IV-rotational",
        };
        write!(f, "{s}")
    }
}

impl std::str::FromStr for CaseTag {
    type Err = SolitonError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().replace('_', "-").as_str() {
            "I" | "I-NONEXISTENT" => Ok(CaseTag::I),
            "II-A" | "IIA" | "II-A-CYLINDER" => Ok(CaseTag::IIA),
            "II-B" | "IIB" | "II-B-EUCLIDEAN" => Ok(CaseTag::IIB),
            "III" | "III-NONEXISTENT" => Ok(CaseTag::III),
            "IV" | "IV-ROTATIONAL" => Ok(CaseTag::IV),
            other => Err(SolitonError::InvalidParameters(format!(
                "unknown case tag `{other}`"
            ))),
        }
    }
}

/// A classified case together with its closed-form parameters.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "case")]
pub enum TheoremCase {
    /// β = 0: only trivial structures exist.
    #[serde(rename = "I-nonexistent")]
    NonexistentBetaZero,
    /// μ = 0, no critical point: cylinder with F = a·r + b, ψ ≡ a.
    #[serde(rename = "II-A-cylinder")]
    Cylinder { a: f64, b: f64 },
    /// μ = 0, one critical point: flat space with F = a·r² + b, ψ = 2a·r.
    #[serde(rename = "II-B-euclidean")]
    Euclidean { a: f64, b: f64 },
    /// β, μ of opposite signs: only trivial structures exist.
    #[serde(rename = "III-nonexistent")]
    NonexistentOppositeSigns,
    /// β, μ of the same sign: rotationally symmetric model with
    /// F = −(1/c)·log(c·(−(a/2)r² − c₁)) and ψ = a·r.
    #[serde(rename = "IV-rotational")]
    Rotational { a: f64, c: f64, c1: f64 },
}

impl TheoremCase {
    pub fn cylinder(a: f64, b: f64) -> Result<Self, SolitonError> {
        if !(a > 0.0) {
            return Err(SolitonError::InvalidParameters(format!(
                "cylinder case needs a > 0, got a = {a}"
            )));
        }
        Ok(TheoremCase::Cylinder { a, b })
    }

    pub fn euclidean(a: f64, b: f64) -> Result<Self, SolitonError> {
        if !(a > 0.0) {
            return Err(SolitonError::InvalidParameters(format!(
                "euclidean case needs a > 0, got a = {a}"
            )));
        }
        Ok(TheoremCase::Euclidean { a, b })
    }

    /// Euclidean case from the slope convention F'(r) = slope·r. The two
    /// parameterizations differ by a factor 2 and are never identified
    /// silently: this converts explicitly via a = slope/2.
    pub fn euclidean_from_slope(slope: f64, b: f64) -> Result<Self, SolitonError> {
        Self::euclidean(slope / 2.0, b)
    }

    pub fn rotational(a: f64, c: f64, c1: f64) -> Result<Self, SolitonError> {
        if !(a > 0.0) {
            return Err(SolitonError::InvalidParameters(format!(
                "rotational case needs a > 0, got a = {a}"
            )));
        }
        if !(c < 0.0) {
            return Err(SolitonError::InvalidParameters(format!(
                "rotational case needs c < 0, got c = {c} (c > 0 means opposite signs, case III)"
            )));
        }
        if !(c1 > 0.0) {
            return Err(SolitonError::InvalidParameters(format!(
                "rotational case needs c1 > 0, got c1 = {c1}"
            )));
        }
        Ok(TheoremCase::Rotational { a, c, c1 })
    }

    pub fn tag(&self) -> CaseTag {
        match self {
            TheoremCase::NonexistentBetaZero => CaseTag::I,
            TheoremCase::Cylinder { .. } => CaseTag::IIA,
            TheoremCase::Euclidean { .. } => CaseTag::IIB,
            TheoremCase::NonexistentOppositeSigns => CaseTag::III,
            TheoremCase::Rotational { .. } => CaseTag::IV,
        }
    }

    pub fn is_constructive(&self) -> bool {
        matches!(
            self,
            TheoremCase::Cylinder { .. }
                | TheoremCase::Euclidean { .. }
                | TheoremCase::Rotational { .. }
        )
    }

    /// The reduced constant c of this case (0 for the μ = 0 cases).
    pub fn reduced_constant(&self) -> Option<f64> {
        match self {
            TheoremCase::Cylinder { .. } | TheoremCase::Euclidean { .. } => Some(0.0),
            TheoremCase::Rotational { c, .. } => Some(*c),
            _ => None,
        }
    }

    /// Flat key-value record.
    pub fn to_record(&self) -> String {
        let mut out = format!("case = {}\n", self.tag());
        match self {
            TheoremCase::Cylinder { a, b } | TheoremCase::Euclidean { a, b } => {
                out.push_str(&format!("a = {a}\nb = {b}\n"));
            }
            TheoremCase::Rotational { a, c, c1 } => {
                out.push_str(&format!("a = {a}\nc = {c}\nc1 = {c1}\n"));
            }
            _ => {}
        }
        out
    }
}

/// Classify a (β, μ) sign pattern. μ = 0 returns both constructive
/// subcases: distinguishing them needs the critical-point structure of F,
/// which the sign pattern does not carry.
pub fn classify(beta: f64, mu: f64) -> Result<Vec<CaseTag>, SolitonError> {
    if beta == 0.0 && mu == 0.0 {
        return Err(SolitonError::InvalidParameters(
            "(beta, mu) = (0, 0) has no content at alpha = 0".into(),
        ));
    }
    Ok(if beta == 0.0 {
        vec![CaseTag::I]
    } else if mu == 0.0 {
        vec![CaseTag::IIA, CaseTag::IIB]
    } else if beta.signum() == mu.signum() {
        vec![CaseTag::IV]
    } else {
        vec![CaseTag::III]
    })
}

/// Evaluate the case's closed-form potential: (F, F', F'', F''').
pub fn closed_form_potential(
    case: &TheoremCase,
    r: f64,
) -> Result<(f64, f64, f64, f64), SolitonError> {
    let field = potential_field(case, (r.min(1.0) * 0.5, r.max(1.0) * 2.0))?;
    Ok((field.value(r), field.d1(r), field.d2(r), field.d3(r)))
}

/// The case's closed-form potential as a radial field on `interval`,
/// with all derivative levels analytic.
pub fn potential_field(
    case: &TheoremCase,
    interval: (f64, f64),
) -> Result<RadialField, SolitonError> {
    match *case {
        TheoremCase::Cylinder { a, b } => Ok(RadialField::closed_form(
            "cylinder-linear",
            interval,
            move |r| a * r + b,
            move |_| a,
            |_| 0.0,
            |_| 0.0,
            |_| 0.0,
        )?),
        TheoremCase::Euclidean { a, b } => Ok(RadialField::closed_form(
            "euclidean-quadratic",
            interval,
            move |r| a * r * r + b,
            move |r| 2.0 * a * r,
            move |_| 2.0 * a,
            |_| 0.0,
            |_| 0.0,
        )?),
        TheoremCase::Rotational { a, c, c1 } => {
            // write the log argument as u = alpha·r² + beta, both positive
            let alpha = -c * a / 2.0;
            let beta = -c * c1;
            debug_assert!(alpha > 0.0 && beta > 0.0);
            Ok(RadialField::closed_form(
                "rotational-log",
                interval,
                move |r| -(1.0 / c) * (alpha * r * r + beta).ln(),
                move |r| a * r / (alpha * r * r + beta),
                move |r| {
                    let u = alpha * r * r + beta;
                    a * (beta - alpha * r * r) / (u * u)
                },
                move |r| {
                    let u = alpha * r * r + beta;
                    -2.0 * a * alpha * r * (3.0 * beta - alpha * r * r) / (u * u * u)
                },
                move |r| {
                    let u = alpha * r * r + beta;
                    let r2 = r * r;
                    -6.0 * a * alpha * (beta * beta - 6.0 * alpha * beta * r2
                        + alpha * alpha * r2 * r2)
                        / (u * u * u * u)
                },
            )?)
        }
        _ => Err(SolitonError::NoModel { tag: case.tag() }),
    }
}

/// Build the warped model (metric, potential) of a constructive case on the
/// default interval, in total dimension `dim`.
///
/// The fiber is the unit sphere; the cylinder case also accepts a flat
/// torus via [`build_model_with_fiber`]. For the rotational case ψ = a·r,
/// so a ≠ 1 leaves a cone angle at the excluded tip — reported, not judged.
pub fn build_model(
    case: &TheoremCase,
    dim: usize,
) -> Result<(WarpedMetric, RadialField), SolitonError> {
    let fiber = FiberSpec::unit_sphere(dim.saturating_sub(1))?;
    build_model_with_fiber(case, fiber)
}

pub fn build_model_with_fiber(
    case: &TheoremCase,
    fiber: FiberSpec,
) -> Result<(WarpedMetric, RadialField), SolitonError> {
    let n = fiber.dim() + 1;
    if n <= 2 {
        return Err(SolitonError::DimensionTooSmall { n });
    }
    if !case.is_constructive() {
        return Err(SolitonError::NoModel { tag: case.tag() });
    }
    if !matches!(case, TheoremCase::Cylinder { .. })
        && fiber.preset() != FiberPreset::UnitSphere
    {
        return Err(SolitonError::InvalidParameters(format!(
            "case {} requires the unit-sphere fiber",
            case.tag()
        )));
    }
    let field = potential_field(case, DEFAULT_MODEL_INTERVAL)?;
    let c = case.reduced_constant().expect("constructive case");
    let profile = profile_from_potential(&field, c)?;
    let metric = WarpedMetric::new(profile, fiber)?;
    Ok((metric, field))
}
