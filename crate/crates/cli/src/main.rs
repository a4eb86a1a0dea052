//! `tropvertex`: scattering diagrams, tropical manifolds and tropical curves
//! from the command line.

mod commands;
mod svg;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use tropvertex::Error;

/// Exact computations around the tropical vertex group.
#[derive(Debug, Parser)]
#[command(name = "tropvertex", version, about)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Extra diagnostics on standard error.
    #[arg(long, short, global = true)]
    verbose: bool,
    /// Write the result here instead of standard output. Relative paths are
    /// resolved against $TROPVERTEX_OUT_DIR when it is set.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    #[value(alias = "json-like", alias = "structured")]
    Json,
    Svg,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Complete a scattering diagram up to the given order.
    Scatter(ScatterArgs),
    /// Log coefficients and relative invariants on an outgoing ray.
    Gw(GwArgs),
    /// Discrete Legendre transform of a complex with a strictly convex function.
    Legendre(LegendreArgs),
    /// Monodromy of the affine structure.
    Monodromy(MonodromyArgs),
    /// Corner locus of a tropical polynomial in two variables.
    Tropcurve(TropcurveArgs),
    /// Check random initial diagrams for consistency after scattering.
    Consistency(ConsistencyArgs),
}

#[derive(Debug, Args)]
pub struct ScatterArgs {
    /// Diagram document.
    pub input: PathBuf,
    /// Truncation order; defaults to the order in the document.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub order: Option<u32>,
    /// Number of terms shown per wall label in SVG output.
    #[arg(long, default_value_t = 3)]
    pub svg_terms: usize,
}

#[derive(Debug, Args)]
pub struct GwArgs {
    /// Multiplicities of the two initial lines, e.g. `2,2`.
    #[arg(long, value_delimiter = ',', required = true)]
    pub ells: Vec<u32>,
    /// Directions of the initial lines, e.g. `1,0;0,1`.
    #[arg(long, default_value = "1,0;0,1")]
    pub dirs: String,
    /// Outgoing direction.
    #[arg(long = "out", default_value = "1,1")]
    pub out_dir: String,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..), default_value_t = 6)]
    pub order: u32,
}

#[derive(Debug, Args)]
pub struct LegendreArgs {
    /// Complex document with a function `phi`.
    pub input: PathBuf,
    /// Apply the transform this many times.
    #[arg(long, default_value_t = 1)]
    pub times: u32,
}

#[derive(Debug, Args)]
#[command(group = ArgGroup::new("what").required(true).args(["chain", "triple", "gamma"]))]
pub struct MonodromyArgs {
    /// Complex document.
    pub input: PathBuf,
    /// Loop `v0,σ1,v1,…,σk,v0` given by vertex and cell names.
    #[arg(long = "loop")]
    pub chain: Option<String>,
    /// Vertex names of an edge or triangle in a three-dimensional complex.
    #[arg(long)]
    pub triple: Option<String>,
    /// Every loop around a codimension-one face with nontrivial monodromy.
    #[arg(long)]
    pub gamma: bool,
}

#[derive(Debug, Args)]
pub struct TropcurveArgs {
    /// Polynomial such as `min(0, X, Y)`, or `@path` to read it from a file.
    pub polynomial: String,
}

#[derive(Debug, Args)]
pub struct ConsistencyArgs {
    #[arg(long, default_value_t = 50)]
    pub count: usize,
    /// Maximum number of initial lines.
    #[arg(long, default_value_t = 4)]
    pub lines: usize,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..), default_value_t = 6)]
    pub order: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// What went wrong, with the exit status it maps to.
#[derive(Debug)]
pub enum Failure {
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Domain(e) => write!(f, "{e}"),
            Failure::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(_) => 5,
            Failure::Domain(Error::Parse { .. }) => 2,
            Failure::Domain(Error::Internal(_) | Error::NonHamiltonian(_)) => 3,
            Failure::Domain(Error::Unsupported(_)) => 4,
            Failure::Domain(_) => 6,
        }
    }
}

pub fn read_input(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

/// Runs `command` and returns the output text; diagnostics go to stderr.
pub struct Context {
    pub format: Format,
    pub verbose: bool,
}

fn output_path(p: &Path) -> PathBuf {
    match std::env::var_os("TROPVERTEX_OUT_DIR") {
        Some(dir) if p.is_relative() => PathBuf::from(dir).join(p),
        _ => p.to_path_buf(),
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(p) => {
            let p = output_path(p);
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)
                    .map_err(|e| Failure::Io(format!("cannot create {}: {e}", parent.display())))?;
            }
            std::fs::write(&p, text)
                .map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Io(format!("stdout: {e}")))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Context {
        format: cli.format,
        verbose: cli.verbose,
    };
    let result = match &cli.command {
        Command::Scatter(a) => commands::scatter(&ctx, a),
        Command::Gw(a) => commands::gw(&ctx, a),
        Command::Legendre(a) => commands::legendre(&ctx, a),
        Command::Monodromy(a) => commands::monodromy(&ctx, a),
        Command::Tropcurve(a) => commands::tropcurve(&ctx, a),
        Command::Consistency(a) => commands::consistency(&ctx, a),
    }
    .and_then(|text| emit(&text, cli.output.as_deref()));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("tropvertex: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}
