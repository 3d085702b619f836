//! Batch command-line front end. All logic lives in the library; this binary
//! parses flags, dispatches to the report layer, writes the artifact, and
//! exits nonzero when any embedded assertion fails.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qgrass::reports::{run, Command as Cmd, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "qgrass",
    about = "Exact verification surfaces for the quantum Grassmann superalgebra at a root of unity"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(clap::Args)]
struct Common {
    /// Number of even variables
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Number of odd variables
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// q-characteristic (odd, at least 3, unless --order overrides)
    #[arg(long, default_value_t = 3)]
    ell: u64,
    /// Multiplicative order of q (defaults to ell)
    #[arg(long)]
    order: Option<u64>,
    /// Truncation level
    #[arg(long, default_value_t = 1)]
    r: u64,
    /// Degree or inclusive range, e.g. `5` or `3..8`
    #[arg(long)]
    s: Option<String>,
    /// Sweep every degree of the shape
    #[arg(long, default_value_t = false)]
    all_s: bool,
    /// Super-weight `a1,...,am;b1,...,bn` (poincare only)
    #[arg(long)]
    weight: Option<String>,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Sub {
    /// q-combinatorics identity sweep
    Identities(Common),
    /// Graded dimensions against the closed formula
    Dims(Common),
    /// Defining relations on graded pieces
    Relations(Common),
    /// Certified socles
    Socle(Common),
    /// Energy filtration and Loewy layers
    Loewy(Common),
    /// Submodule inclusion net (DOT by default)
    Net(Common),
    /// de Rham complex, weight blocks and cohomology
    Derham(Common),
    /// Per-weight acyclicity of the untruncated complex
    Poincare(Common),
}

fn dispatch(sub: &Sub) -> (&Common, Cmd, OutputFormat) {
    let (common, cmd, default_format) = match sub {
        Sub::Identities(c) => (c, Cmd::Identities, OutputFormat::Json),
        Sub::Dims(c) => (c, Cmd::Dims, OutputFormat::Json),
        Sub::Relations(c) => (c, Cmd::Relations, OutputFormat::Json),
        Sub::Socle(c) => (c, Cmd::Socle, OutputFormat::Json),
        Sub::Loewy(c) => (c, Cmd::Loewy, OutputFormat::Json),
        Sub::Net(c) => (c, Cmd::Net, OutputFormat::Dot),
        Sub::Derham(c) => (c, Cmd::Derham, OutputFormat::Json),
        Sub::Poincare(c) => (c, Cmd::Poincare, OutputFormat::Json),
    };
    let format = match common.format {
        Some(Format::Json) => OutputFormat::Json,
        Some(Format::Csv) => OutputFormat::Csv,
        Some(Format::Dot) => OutputFormat::Dot,
        None => default_format,
    };
    (common, cmd, format)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (common, cmd, format) = dispatch(&cli.command);
    let cfg = match RunConfig::build(
        common.m,
        common.n,
        common.ell,
        common.order,
        common.r,
        common.s.as_deref(),
        common.all_s,
        common.weight.as_deref(),
        format,
    ) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("{{\"error\": \"{e}\"}}");
            return ExitCode::from(2);
        }
    };
    match run(cmd, &cfg) {
        Ok(rendered) => {
            let write_result = match &common.out {
                Some(path) => std::fs::write(path, rendered.text.as_bytes()),
                None => std::io::stdout().write_all(rendered.text.as_bytes()),
            };
            if let Err(e) = write_result {
                eprintln!("{{\"error\": \"write failed: {e}\"}}");
                return ExitCode::from(2);
            }
            if rendered.passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("{{\"error\": \"embedded assertions failed\"}}");
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("{{\"error\": \"{e}\"}}");
            ExitCode::from(2)
        }
    }
}
