//! Library backing the `etm` command-line tool: configuration handling,
//! command runners, and report serialization.

pub mod config;
pub mod envelope;
pub mod error;
pub mod output;
pub mod runner;

pub use config::{GridSpec, OutputFormat, Settings, Tolerances};
pub use envelope::{ClassifierVerdict, ConfigEcho, ReportEnvelope, SCHEMA_VERSION};
pub use error::{CliError, EXIT_CONFIG_ERROR, EXIT_IDENTITY_FAILURE, EXIT_PASS};
