//! `etm` — verification front end for gradient Einstein-type structures
//! on warped products.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use report_cli::config::{parse_init, GridSpec, OutputFormat, Settings};
use report_cli::error::{CliError, EXIT_IDENTITY_FAILURE, EXIT_PASS};
use report_cli::output::emit;
use report_cli::runner;

#[derive(Parser)]
#[command(
    name = "etm",
    version,
    about = "Verify, classify, integrate, and sweep gradient Einstein-type structures on warped products"
)]
struct Cli {
    /// Flat key = value configuration file; command-line flags win.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a model (or load a potential) and check every identity over a grid.
    Verify(VerifyArgs),
    /// Classify a (beta, mu) sign pattern.
    Classify(ClassifyArgs),
    /// Integrate the radial equation F''' = 3cF'F'' - c^2 F'^3 with dense output.
    Integrate(IntegrateArgs),
    /// Evaluate one residual over a parameter grid x r grid (CSV).
    Sweep(SweepArgs),
    /// Print the soliton-type parameter table.
    Table(TableArgs),
}

#[derive(Args, Default)]
struct VerifyArgs {
    /// Case tag: II-A, II-B, or IV (I and III admit no model).
    #[arg(long)]
    case: Option<String>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    c1: Option<f64>,
    /// Reduced constant c = -mu/beta.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    rho: Option<f64>,
    /// Total dimension n (default 4).
    #[arg(long)]
    dim: Option<usize>,
    /// Sample grid start:stop:count.
    #[arg(long)]
    grid: Option<String>,
    /// Sampled potential record (see the profile record format).
    #[arg(long, value_name = "PATH")]
    potential_file: Option<PathBuf>,
    /// Comma-separated identity list (default: all).
    #[arg(long)]
    identities: Option<String>,
    #[arg(long)]
    tol_algebraic: Option<f64>,
    #[arg(long)]
    tol_spline: Option<f64>,
    #[arg(long)]
    tol_fd: Option<f64>,
    /// json or csv.
    #[arg(long)]
    format: Option<String>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args, Default)]
struct ClassifyArgs {
    #[arg(allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(allow_hyphen_values = true)]
    mu: Option<f64>,
    #[arg(long)]
    format: Option<String>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args, Default)]
struct IntegrateArgs {
    /// Reduced constant c = -mu/beta.
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
    /// Initial data F,F',F'' at the grid start.
    #[arg(long, allow_hyphen_values = true)]
    init: Option<String>,
    /// Integration window and sample grid start:stop:count.
    #[arg(long)]
    grid: Option<String>,
    /// Rotational-case parameters for the closed-form delta column.
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    c1: Option<f64>,
    #[arg(long)]
    rtol: Option<f64>,
    #[arg(long)]
    atol: Option<f64>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args, Default)]
struct SweepArgs {
    /// Residual name: einstein-radial, einstein-fiber, key1, key2-rr,
    /// key2-fiber, key3, key4, or scalar-curvature.
    #[arg(long)]
    residual: Option<String>,
    /// Case parameter to sweep: a, b, c, or c1.
    #[arg(long)]
    param: Option<String>,
    /// Parameter range lo:hi:count.
    #[arg(long, allow_hyphen_values = true)]
    range: Option<String>,
    #[arg(long)]
    case: Option<String>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    c1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long)]
    grid: Option<String>,
    /// Sweep a random solution family of this size instead of a parameter.
    #[arg(long)]
    suite: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args, Default)]
struct TableArgs {
    /// Single entry to look up (e.g. "quasi-yamabe"); default: whole table.
    #[arg(long = "type")]
    soliton_type: Option<String>,
    #[arg(long)]
    dim: Option<usize>,
    /// Parameter k: sigma_k index and quasi-Yamabe 1/k.
    #[arg(long, allow_hyphen_values = true)]
    k: Option<f64>,
    /// json or csv.
    #[arg(long)]
    format: Option<String>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn settings_from_command(command: &Command) -> Result<Settings, CliError> {
    let mut s = Settings::default();
    match command {
        Command::Verify(a) => {
            s.command = Some("verify".into());
            s.case = a.case.clone();
            s.a = a.a;
            s.b = a.b;
            s.c1 = a.c1;
            s.c = a.c;
            s.beta = a.beta;
            s.mu = a.mu;
            s.rho = a.rho;
            s.dim = a.dim;
            s.grid = a.grid.as_deref().map(GridSpec::parse).transpose()?;
            s.potential_file = a.potential_file.clone();
            s.identities = a
                .identities
                .as_ref()
                .map(|list| list.split(',').map(|x| x.trim().to_string()).collect());
            s.tol_algebraic = a.tol_algebraic;
            s.tol_spline = a.tol_spline;
            s.tol_fd = a.tol_fd;
            s.format = a.format.as_deref().map(str::parse).transpose()?;
            s.out = a.out.clone();
        }
        Command::Classify(a) => {
            s.command = Some("classify".into());
            s.beta = a.beta;
            s.mu = a.mu;
            s.format = a.format.as_deref().map(str::parse).transpose()?;
            s.out = a.out.clone();
        }
        Command::Integrate(a) => {
            s.command = Some("integrate".into());
            s.c = a.c;
            s.beta = a.beta;
            s.mu = a.mu;
            s.init = a.init.as_deref().map(parse_init).transpose()?;
            s.grid = a.grid.as_deref().map(GridSpec::parse).transpose()?;
            s.a = a.a;
            s.c1 = a.c1;
            s.rtol = a.rtol;
            s.atol = a.atol;
            s.out = a.out.clone();
        }
        Command::Sweep(a) => {
            s.command = Some("sweep".into());
            s.residual = a.residual.clone();
            s.param = a.param.clone();
            s.range = a.range.as_deref().map(GridSpec::parse_range).transpose()?;
            s.case = a.case.clone();
            s.a = a.a;
            s.b = a.b;
            s.c1 = a.c1;
            s.c = a.c;
            s.beta = a.beta;
            s.mu = a.mu;
            s.dim = a.dim;
            s.grid = a.grid.as_deref().map(GridSpec::parse).transpose()?;
            s.suite = a.suite;
            s.seed = a.seed;
            s.out = a.out.clone();
        }
        Command::Table(a) => {
            s.command = Some("table".into());
            s.soliton_type = a.soliton_type.clone();
            s.dim = a.dim;
            s.k = a.k;
            s.format = a.format.as_deref().map(str::parse).transpose()?;
            s.out = a.out.clone();
        }
    }
    Ok(s)
}

fn dispatch(settings: Settings) -> Result<i32, CliError> {
    let command = settings
        .command
        .clone()
        .ok_or_else(|| CliError::Config("no command given (subcommand or config file)".into()))?;
    match command.as_str() {
        "verify" => {
            let (envelope, rendered) = runner::run_verify(&settings)?;
            emit(settings.out.as_deref(), &rendered)?;
            for report in &envelope.reports {
                eprintln!(
                    "{:>16}: max |residual| = {:.3e} (tol {:.1e}){} -> {}",
                    report.identity,
                    report.max_abs,
                    report.tolerance,
                    if report.fallback_used {
                        " [spline fallback]"
                    } else {
                        ""
                    },
                    if report.pass { "pass" } else { "FAIL" }
                );
            }
            Ok(if envelope.pass {
                EXIT_PASS
            } else {
                EXIT_IDENTITY_FAILURE
            })
        }
        "classify" => {
            let (text, envelope) = runner::run_classify(&settings)?;
            println!("{text}");
            if settings.out.is_some() {
                let rendered = match settings.format.unwrap_or(OutputFormat::Json) {
                    OutputFormat::Json => envelope.to_json(),
                    OutputFormat::Csv => {
                        let v = &envelope.classifier[0];
                        format!(
                            "beta,mu,cases,c,model_available\n{},{},{},{},{}\n",
                            v.beta,
                            v.mu,
                            v.cases.join(";"),
                            v.c.map(|c| c.to_string()).unwrap_or_default(),
                            v.model_available
                        )
                    }
                };
                emit(settings.out.as_deref(), &rendered)?;
            }
            Ok(EXIT_PASS)
        }
        "integrate" => {
            let (csv, note) = runner::run_integrate(&settings)?;
            emit(settings.out.as_deref(), &csv)?;
            if let Some(note) = note {
                eprintln!("{note}");
            }
            Ok(EXIT_PASS)
        }
        "sweep" => {
            let csv = runner::run_sweep(&settings)?;
            emit(settings.out.as_deref(), &csv)?;
            Ok(EXIT_PASS)
        }
        "table" => {
            let rendered = runner::run_table(&settings)?;
            emit(settings.out.as_deref(), &rendered)?;
            Ok(EXIT_PASS)
        }
        other => Err(CliError::Config(format!("unknown command `{other}`"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let run = || -> Result<i32, CliError> {
        let file_settings = match &cli.config {
            Some(path) => Settings::from_file(path)?,
            None => Settings::default(),
        };
        let cli_settings = match &cli.command {
            Some(command) => settings_from_command(command)?,
            None => Settings::default(),
        };
        dispatch(cli_settings.merged_over(file_settings))
    };

    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
