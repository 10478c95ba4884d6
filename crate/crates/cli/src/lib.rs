//! The `pillowcase` command-line tool: pillowcase images of knot exteriors,
//! homology queries and splice searches.
//!
//! Exit codes: 0 on success, 1 when a search finds nothing, 2 on malformed
//! input, 3 when input violates a mathematical contract.

mod homology_cmd;
mod image_cmd;
mod job;
mod splice_cmd;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use homology::KnotExteriorModel;
use surep::SolverConfig;

pub use job::{GluingSpec, ModelSpec, SpliceJob};

#[derive(Debug, Parser)]
#[command(name = "pillowcase", version, about = "SU(2) pillowcase images, torus-gluing homology and splice searches")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// TOML file with solver settings.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker thread cap.
    #[arg(long, global = true, env = "PILLOW_THREADS")]
    pub threads: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Solve every candidate and reduce results in order.
    #[arg(long, global = true)]
    pub deterministic: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the pillowcase image of a model.
    Image(image_cmd::ImageArgs),
    /// Homology of fillings, gluings and Seifert spaces; standard forms.
    #[command(subcommand)]
    Homology(homology_cmd::HomologyCommand),
    /// Run a splice job and print the result as JSON.
    Splice(splice_cmd::SpliceArgs),
}

/// A failed command and its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Malformed input: exit 2.
    Input(String),
    /// Well-formed input violating a contract: exit 3.
    Contract(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Contract(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Contract(m) => m,
        }
    }
}

pub(crate) fn input<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Input(e.to_string())
}

pub(crate) fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Input(format!("{}: {e}", path.display()))
}

/// A built-in name, or a path to a model JSON file.
pub fn load_model(reference: &str) -> Result<KnotExteriorModel, Failure> {
    let path = Path::new(reference);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
        return KnotExteriorModel::from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())));
    }
    families::builtin_model(reference).map_err(input)
}

/// Solver settings from defaults, the config file and the global flags, in
/// increasing precedence.
pub fn solver_config(global: &GlobalArgs) -> Result<SolverConfig, Failure> {
    let mut cfg = match &global.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
            SolverConfig::from_toml_str(&text).map_err(input)?
        }
        None => SolverConfig::default(),
    };
    if let Some(t) = global.threads {
        cfg.threads = Some(t);
    }
    if let Some(s) = global.seed {
        cfg.seed = s;
    }
    if global.deterministic {
        cfg.deterministic = true;
    }
    cfg.validate().map_err(input)?;
    Ok(cfg)
}

/// Runs a parsed command, writing its report to `out`. Returns the exit code
/// of a completed command.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = solver_config(&cli.global)?;
    match &cli.command {
        Command::Image(args) => image_cmd::run(args, &cfg, out),
        Command::Homology(cmd) => homology_cmd::run(cmd, out),
        Command::Splice(args) => splice_cmd::run(args, &cfg, out),
    }
}

pub(crate) fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(input)
}

pub(crate) fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serializes")
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| io_failure(path, e))
}
