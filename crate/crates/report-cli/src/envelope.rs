use serde::Serialize;
use soliton_engine::ResidualReport;

use crate::config::{GridSpec, Tolerances};

pub const SCHEMA_VERSION: u32 = 1;

/// Echo of the effective configuration, embedded in every JSON report.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    pub tolerances: Tolerances,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub potential_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifierVerdict {
    pub beta: f64,
    pub mu: f64,
    pub cases: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    pub model_available: bool,
}

/// The versioned JSON envelope. Identical configs produce byte-identical
/// envelopes apart from `timing_ms`.
#[derive(Debug, Clone, Serialize)]
pub struct ReportEnvelope {
    pub version: &'static str,
    pub schema_version: u32,
    pub config: ConfigEcho,
    pub reports: Vec<ResidualReport>,
    pub classifier: Vec<ClassifierVerdict>,
    pub timing_ms: f64,
    pub pass: bool,
}

impl ReportEnvelope {
    pub fn new(config: ConfigEcho) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION"),
            schema_version: SCHEMA_VERSION,
            config,
            reports: Vec::new(),
            classifier: Vec::new(),
            timing_ms: 0.0,
            pass: true,
        }
    }

    pub fn push_report(&mut self, report: ResidualReport) {
        self.pass = self.pass && report.pass;
        self.reports.push(report);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("envelope serializes") + "\n"
    }
}
