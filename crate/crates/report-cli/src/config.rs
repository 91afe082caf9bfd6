//! Run configuration: a flat key-value file plus command-line overrides,
//! command line winning.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::CliError;

/// Inclusive sample grid start:stop:count.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl GridSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let spec = Self::parse_raw(text)?;
        spec.validate()?;
        Ok(spec)
    }

    /// Parameter ranges may be negative; only the shape is checked.
    pub fn parse_range(text: &str) -> Result<Self, CliError> {
        let spec = Self::parse_raw(text)?;
        if !(spec.stop > spec.start) {
            return Err(CliError::Config(format!(
                "range stop {} must exceed start {}",
                spec.stop, spec.start
            )));
        }
        if spec.count < 2 {
            return Err(CliError::Config(format!(
                "range count must be at least 2, got {}",
                spec.count
            )));
        }
        Ok(spec)
    }

    fn parse_raw(text: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(CliError::Config(format!(
                "grid must be start:stop:count, got `{text}`"
            )));
        }
        let start: f64 = parts[0]
            .parse()
            .map_err(|_| CliError::Config(format!("bad grid start `{}`", parts[0])))?;
        let stop: f64 = parts[1]
            .parse()
            .map_err(|_| CliError::Config(format!("bad grid stop `{}`", parts[1])))?;
        let count: usize = parts[2]
            .parse()
            .map_err(|_| CliError::Config(format!("bad grid count `{}`", parts[2])))?;
        Ok(Self { start, stop, count })
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.start > 0.0) {
            return Err(CliError::Config(format!(
                "grid start must be positive, got {}",
                self.start
            )));
        }
        if !(self.stop > self.start) {
            return Err(CliError::Config(format!(
                "grid stop {} must exceed start {}",
                self.stop, self.start
            )));
        }
        if self.count < 2 {
            return Err(CliError::Config(format!(
                "grid count must be at least 2, got {}",
                self.count
            )));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count)
            .map(|i| {
                self.start + (self.stop - self.start) * i as f64 / (self.count - 1) as f64
            })
            .collect()
    }
}

impl std::fmt::Display for GridSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.count)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(CliError::Config(format!("unknown format `{other}`"))),
        }
    }
}

/// All settable keys, every one optional so that file and command line can
/// be merged. Key names match the command-line flags.
#[derive(Debug, Clone, Default)]
pub struct Settings {
    pub command: Option<String>,
    pub case: Option<String>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub c1: Option<f64>,
    pub c: Option<f64>,
    pub beta: Option<f64>,
    pub mu: Option<f64>,
    pub rho: Option<f64>,
    pub dim: Option<usize>,
    pub soliton_type: Option<String>,
    pub k: Option<f64>,
    pub grid: Option<GridSpec>,
    pub tol_algebraic: Option<f64>,
    pub tol_spline: Option<f64>,
    pub tol_fd: Option<f64>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
    pub potential_file: Option<PathBuf>,
    pub identities: Option<Vec<String>>,
    pub init: Option<[f64; 3]>,
    pub rtol: Option<f64>,
    pub atol: Option<f64>,
    pub residual: Option<String>,
    pub param: Option<String>,
    pub range: Option<GridSpec>,
    pub suite: Option<usize>,
    pub seed: Option<u64>,
}

impl Settings {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Config(format!("cannot read config {}: {e}", path.display()))
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut s = Settings::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("config line {}: expected key = value", lineno + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            let num = |what: &str| -> Result<f64, CliError> {
                value
                    .parse()
                    .map_err(|_| CliError::Config(format!("bad number for {what}: `{value}`")))
            };
            match key {
                "command" => s.command = Some(value.to_string()),
                "case" => s.case = Some(value.to_string()),
                "a" => s.a = Some(num(key)?),
                "b" => s.b = Some(num(key)?),
                "c1" => s.c1 = Some(num(key)?),
                "c" => s.c = Some(num(key)?),
                "beta" => s.beta = Some(num(key)?),
                "mu" => s.mu = Some(num(key)?),
                "rho" => s.rho = Some(num(key)?),
                "k" => s.k = Some(num(key)?),
                "dim" => {
                    s.dim = Some(value.parse().map_err(|_| {
                        CliError::Config(format!("bad dimension `{value}`"))
                    })?)
                }
                "type" => s.soliton_type = Some(value.to_string()),
                "grid" => s.grid = Some(GridSpec::parse(value)?),
                "tol-algebraic" | "tol_algebraic" => s.tol_algebraic = Some(num(key)?),
                "tol-spline" | "tol_spline" => s.tol_spline = Some(num(key)?),
                "tol-fd" | "tol_fd" => s.tol_fd = Some(num(key)?),
                "format" => s.format = Some(value.parse()?),
                "out" => s.out = Some(PathBuf::from(value)),
                "potential-file" | "potential_file" => {
                    s.potential_file = Some(PathBuf::from(value))
                }
                "identities" => {
                    s.identities =
                        Some(value.split(',').map(|x| x.trim().to_string()).collect())
                }
                "init" => s.init = Some(parse_init(value)?),
                "rtol" => s.rtol = Some(num(key)?),
                "atol" => s.atol = Some(num(key)?),
                "residual" => s.residual = Some(value.to_string()),
                "param" => s.param = Some(value.to_string()),
                "range" => s.range = Some(GridSpec::parse_range(value)?),
                "suite" => {
                    s.suite = Some(value.parse().map_err(|_| {
                        CliError::Config(format!("bad suite size `{value}`"))
                    })?)
                }
                "seed" => {
                    s.seed = Some(value.parse().map_err(|_| {
                        CliError::Config(format!("bad seed `{value}`"))
                    })?)
                }
                other => return Err(CliError::Config(format!("unknown config key `{other}`"))),
            }
        }
        Ok(s)
    }

    /// Overlay `self` (command line) on top of `base` (file).
    pub fn merged_over(self, base: Settings) -> Settings {
        macro_rules! pick {
            ($field:ident) => {
                self.$field.or(base.$field)
            };
        }
        Settings {
            command: pick!(command),
            case: pick!(case),
            a: pick!(a),
            b: pick!(b),
            c1: pick!(c1),
            c: pick!(c),
            beta: pick!(beta),
            mu: pick!(mu),
            rho: pick!(rho),
            dim: pick!(dim),
            soliton_type: pick!(soliton_type),
            k: pick!(k),
            grid: pick!(grid),
            tol_algebraic: pick!(tol_algebraic),
            tol_spline: pick!(tol_spline),
            tol_fd: pick!(tol_fd),
            format: pick!(format),
            out: pick!(out),
            potential_file: pick!(potential_file),
            identities: pick!(identities),
            init: pick!(init),
            rtol: pick!(rtol),
            atol: pick!(atol),
            residual: pick!(residual),
            param: pick!(param),
            range: pick!(range),
            suite: pick!(suite),
            seed: pick!(seed),
        }
    }
}

pub fn parse_init(value: &str) -> Result<[f64; 3], CliError> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(CliError::Config(format!(
            "init must be three comma-separated numbers F,F',F'', got `{value}`"
        )));
    }
    let mut out = [0.0; 3];
    for (slot, part) in out.iter_mut().zip(&parts) {
        *slot = part
            .parse()
            .map_err(|_| CliError::Config(format!("bad init entry `{part}`")))?;
    }
    Ok(out)
}

/// Default three-regime tolerances: rounding, interpolation, stencil.
pub const DEFAULT_TOL_ALGEBRAIC: f64 = 1e-10;
pub const DEFAULT_TOL_SPLINE: f64 = 1e-6;
pub const DEFAULT_TOL_FD: f64 = 1e-4;

/// Validated tolerance triple.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Tolerances {
    pub algebraic: f64,
    pub spline: f64,
    pub fd: f64,
}

impl Tolerances {
    pub fn from_settings(s: &Settings) -> Result<Self, CliError> {
        let t = Self {
            algebraic: s.tol_algebraic.unwrap_or(DEFAULT_TOL_ALGEBRAIC),
            spline: s.tol_spline.unwrap_or(DEFAULT_TOL_SPLINE),
            fd: s.tol_fd.unwrap_or(DEFAULT_TOL_FD),
        };
        for (name, v) in [
            ("tol-algebraic", t.algebraic),
            ("tol-spline", t.spline),
            ("tol-fd", t.fd),
        ] {
            if !(v > 0.0) {
                return Err(CliError::Config(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spec_parse_and_validate() {
        let g = GridSpec::parse("0.1:5:100").unwrap();
        assert_eq!(g.count, 100);
        assert_eq!(g.points().len(), 100);
        assert!(GridSpec::parse("0:5:100").is_err());
        assert!(GridSpec::parse("1:5:1").is_err());
        assert!(GridSpec::parse("5:1:10").is_err());
        assert!(GridSpec::parse("nope").is_err());
    }

    #[test]
    fn settings_merge_prefers_cli() {
        let file = Settings::parse("command = verify\ncase = IV\na = 2\n").unwrap();
        let cli = Settings {
            a: Some(3.0),
            ..Default::default()
        };
        let merged = cli.merged_over(file);
        assert_eq!(merged.a, Some(3.0));
        assert_eq!(merged.case.as_deref(), Some("IV"));
        assert_eq!(merged.command.as_deref(), Some("verify"));
    }

    #[test]
    fn unknown_key_rejected() {
        assert!(Settings::parse("what = 1\n").is_err());
    }
}
