use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use leavitt_cli::{run_pyramid, run_text, CliError, Command, Options, Report};
use leavitt_core::{FieldCard, DEFAULT_LATTICE_CAP};

#[derive(Parser)]
#[command(name = "leavitt", version, about = "Simple-module census and ideal structure of Leavitt path algebras")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Abort when a lattice would exceed this many elements.
    #[arg(long, global = true, default_value_t = DEFAULT_LATTICE_CAP)]
    max_lattice: usize,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a graph file and report its size.
    Validate { file: PathBuf },
    /// Vertex kinds, line points, cycles, condition (K) and cycle disjointness.
    Analyze { file: PathBuf },
    /// The lattice of admissible pairs.
    Lattice { file: PathBuf },
    /// The socular chain and the graded-ideal chain.
    Chain { file: PathBuf },
    /// Number of simple modules over a field of the given size.
    Census {
        file: PathBuf,
        /// finite:<q>, countable or uncountable.
        #[arg(long)]
        field: FieldCard,
    },
    /// Tail-equivalence classes of rational infinite paths.
    Chen {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_period: usize,
    },
    /// Generate and analyze the pyramid row graph with N layers.
    Pyramid { layers: usize },
}

fn execute(cli: &Cli) -> Result<Report, CliError> {
    let options = Options { max_lattice: cli.max_lattice };
    let (command, file) = match &cli.command {
        Cmd::Pyramid { layers } => return run_pyramid(*layers),
        Cmd::Validate { file } => (Command::Validate, file),
        Cmd::Analyze { file } => (Command::Analyze, file),
        Cmd::Lattice { file } => (Command::Lattice, file),
        Cmd::Chain { file } => (Command::Chain, file),
        Cmd::Census { file, field } => (Command::Census { field: *field }, file),
        Cmd::Chen { file, max_period } => (Command::Chen { max_period: *max_period }, file),
    };
    let path = file.display().to_string();
    let text = std::fs::read_to_string(file).map_err(|source| CliError::Io { path: path.clone(), source })?;
    run_text(&command, &path, &text, options)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(report) => {
            let out = match cli.format {
                Format::Text => report.text,
                Format::Json => report.render_json(),
            };
            let _ = std::io::stdout().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
