//! Self-describing textual records for warping profiles and sampled radial
//! potentials: flat `key = value` lines, `#` comments, lists comma-separated.

use crate::error::WarpedError;
use crate::profile::{Representation, WarpingProfile};
use crate::radial::RadialField;

/// What a record describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecordKind {
    Profile,
    Potential,
}

#[derive(Debug, Clone)]
pub struct Record {
    pub kind: RecordKind,
    pub representation: Representation,
    pub interval: (f64, f64),
    /// Closed-form tag, e.g. "constant".
    pub form: Option<String>,
    pub params: Vec<(String, f64)>,
    /// Sampled representation: knot abscissae and values.
    pub knots: Option<(Vec<f64>, Vec<f64>)>,
}

const SCHEMA: &str = "warped-record/1";

impl Record {
    pub fn parse(text: &str) -> Result<Self, WarpedError> {
        let mut schema = None;
        let mut kind = None;
        let mut representation = None;
        let mut start = None;
        let mut end = None;
        let mut form = None;
        let mut params = Vec::new();
        let mut knots_r: Option<Vec<f64>> = None;
        let mut knots_v: Option<Vec<f64>> = None;

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                WarpedError::Record(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            let bad_num = |what: &str| {
                WarpedError::Record(format!("line {}: invalid number for {what}", lineno + 1))
            };
            match key {
                "schema" => schema = Some(value.to_string()),
                "kind" => {
                    kind = Some(match value {
                        "profile" => RecordKind::Profile,
                        "potential" => RecordKind::Potential,
                        other => {
                            return Err(WarpedError::Record(format!("unknown kind `{other}`")))
                        }
                    })
                }
                "representation" => {
                    representation = Some(match value {
                        "closed-form" => Representation::ClosedForm,
                        "sampled-spline" => Representation::SampledSpline,
                        other => {
                            return Err(WarpedError::Record(format!(
                                "unknown representation `{other}`"
                            )))
                        }
                    })
                }
                "interval.start" => start = Some(value.parse().map_err(|_| bad_num(key))?),
                "interval.end" => end = Some(value.parse().map_err(|_| bad_num(key))?),
                "form" => form = Some(value.to_string()),
                "knots.r" => knots_r = Some(parse_list(value, lineno + 1)?),
                "knots.value" => knots_v = Some(parse_list(value, lineno + 1)?),
                _ if key.starts_with("param.") => {
                    let name = key.trim_start_matches("param.").to_string();
                    params.push((name, value.parse().map_err(|_| bad_num(key))?));
                }
                other => {
                    return Err(WarpedError::Record(format!("unknown key `{other}`")));
                }
            }
        }

        match schema.as_deref() {
            Some(SCHEMA) => {}
            Some(other) => {
                return Err(WarpedError::Record(format!("unsupported schema `{other}`")))
            }
            None => return Err(WarpedError::Record("missing schema line".into())),
        }
        let kind = kind.ok_or_else(|| WarpedError::Record("missing kind".into()))?;
        let representation =
            representation.ok_or_else(|| WarpedError::Record("missing representation".into()))?;
        let interval = (
            start.ok_or_else(|| WarpedError::Record("missing interval.start".into()))?,
            end.ok_or_else(|| WarpedError::Record("missing interval.end".into()))?,
        );
        let knots = match (knots_r, knots_v) {
            (Some(r), Some(v)) => {
                if r.len() != v.len() {
                    return Err(WarpedError::Record(format!(
                        "knot list length mismatch: {} vs {}",
                        r.len(),
                        v.len()
                    )));
                }
                Some((r, v))
            }
            (None, None) => None,
            _ => return Err(WarpedError::Record("incomplete knot lists".into())),
        };
        if representation == Representation::SampledSpline && knots.is_none() {
            return Err(WarpedError::Record(
                "sampled-spline record needs knots.r and knots.value".into(),
            ));
        }
        if representation == Representation::ClosedForm && form.is_none() {
            return Err(WarpedError::Record("closed-form record needs a form".into()));
        }
        Ok(Self {
            kind,
            representation,
            interval,
            form,
            params,
            knots,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("schema = {SCHEMA}\n"));
        out.push_str(&format!(
            "kind = {}\n",
            match self.kind {
                RecordKind::Profile => "profile",
                RecordKind::Potential => "potential",
            }
        ));
        out.push_str(&format!("representation = {}\n", self.representation));
        out.push_str(&format!("interval.start = {:.17e}\n", self.interval.0));
        out.push_str(&format!("interval.end = {:.17e}\n", self.interval.1));
        if let Some(form) = &self.form {
            out.push_str(&format!("form = {form}\n"));
        }
        for (name, value) in &self.params {
            out.push_str(&format!("param.{name} = {value:.17e}\n"));
        }
        if let Some((r, v)) = &self.knots {
            out.push_str(&format!("knots.r = {}\n", join(r)));
            out.push_str(&format!("knots.value = {}\n", join(v)));
        }
        out
    }

    pub fn from_profile(profile: &WarpingProfile) -> Self {
        match profile.form() {
            Some((form, params)) => Self {
                kind: RecordKind::Profile,
                representation: Representation::ClosedForm,
                interval: profile.interval(),
                form: Some(form.to_string()),
                params: params.to_vec(),
                knots: None,
            },
            None => {
                let spline = profile.spline().expect("sampled profile has a spline");
                let (r, v) = spline.knots();
                Self {
                    kind: RecordKind::Profile,
                    representation: Representation::SampledSpline,
                    interval: profile.interval(),
                    form: None,
                    params: Vec::new(),
                    knots: Some((r.to_vec(), v.to_vec())),
                }
            }
        }
    }

    /// Serialize a potential by its samples; closed forms are densely
    /// resampled.
    pub fn from_potential(field: &RadialField, samples: usize) -> Self {
        let (r0, r1) = field.interval();
        let n = samples.max(8);
        let r: Vec<f64> = (0..n)
            .map(|i| r0 + (r1 - r0) * i as f64 / (n - 1) as f64)
            .collect();
        let v: Vec<f64> = r.iter().map(|&x| field.value(x)).collect();
        Self {
            kind: RecordKind::Potential,
            representation: Representation::SampledSpline,
            interval: field.interval(),
            form: None,
            params: Vec::new(),
            knots: Some((r, v)),
        }
    }

    pub fn into_profile(self) -> Result<WarpingProfile, WarpedError> {
        if self.kind != RecordKind::Profile {
            return Err(WarpedError::Record(
                "record describes a potential, not a profile".into(),
            ));
        }
        match self.representation {
            Representation::SampledSpline => {
                let (r, v) = self.knots.expect("validated at parse");
                WarpingProfile::from_samples(r, v)
            }
            Representation::ClosedForm => {
                let form = self.form.as_deref().expect("validated at parse");
                let get = |name: &str| -> Result<f64, WarpedError> {
                    self.params
                        .iter()
                        .find(|(n, _)| n == name)
                        .map(|(_, v)| *v)
                        .ok_or_else(|| {
                            WarpedError::Record(format!("form `{form}` needs param.{name}"))
                        })
                };
                match form {
                    "constant" => WarpingProfile::constant(get("a")?, self.interval),
                    "linear" => WarpingProfile::linear(get("a")?, get("b")?, self.interval),
                    "sin" => WarpingProfile::sine(self.interval),
                    other => Err(WarpedError::Record(format!("unknown form `{other}`"))),
                }
            }
        }
    }

    pub fn into_potential(self) -> Result<RadialField, WarpedError> {
        if self.kind != RecordKind::Potential {
            return Err(WarpedError::Record(
                "record describes a profile, not a potential".into(),
            ));
        }
        match self.representation {
            Representation::SampledSpline => {
                let (r, v) = self.knots.expect("validated at parse");
                RadialField::from_samples(r, v)
            }
            Representation::ClosedForm => Err(WarpedError::Record(
                "closed-form potential records are not supported; pass case parameters instead"
                    .into(),
            )),
        }
    }
}

fn parse_list(value: &str, lineno: usize) -> Result<Vec<f64>, WarpedError> {
    value
        .split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| WarpedError::Record(format!("line {lineno}: bad list entry `{s}`")))
        })
        .collect()
}

fn join(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format!("{v:.17e}"))
        .collect::<Vec<_>>()
        .join(", ")
}
