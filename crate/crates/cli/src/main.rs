use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use luna_cli::{cmd_classify, cmd_compare, cmd_polytope, cmd_recover, cmd_validate, parse_input, InputDocument, OutputReport};

/// Combinatorial invariants of affine spherical varieties.
#[derive(Parser)]
#[command(name = "luna", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Pretty, global = true)]
    format: Format,
    /// Include the recursion trace.
    #[arg(long, global = true)]
    verbose: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Pretty,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Recover the B-divisors with their valuations and stabilizers.
    Recover {
        #[arg(long)]
        input: PathBuf,
    },
    /// Lattice, root types, and forms of the spherical roots.
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Compare weight monoids and spherical roots of two documents.
    Compare {
        #[arg(long, num_args = 2, required = true)]
        input: Vec<PathBuf>,
    },
    /// Check a document's divisors block.
    Validate {
        #[arg(long)]
        input: PathBuf,
    },
    /// Polyhedron cut out by the divisors with the given orders.
    Polytope {
        #[arg(long)]
        input: PathBuf,
    },
}

fn load(path: &Path) -> Result<InputDocument, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {}", path.display(), e))?;
    parse_input(&text).map_err(|e| format!("{}: {}", path.display(), e))
}

fn run(cli: &Cli) -> Result<OutputReport, String> {
    Ok(match &cli.command {
        Command::Recover { input } => cmd_recover(&load(input)?, cli.verbose),
        Command::Classify { input } => cmd_classify(&load(input)?),
        Command::Compare { input } => cmd_compare(&load(&input[0])?, &load(&input[1])?),
        Command::Validate { input } => cmd_validate(&load(input)?),
        Command::Polytope { input } => cmd_polytope(&load(input)?),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rep) => {
            let text = match cli.format {
                Format::Pretty => rep.to_pretty(),
                Format::Machine => rep.to_machine(),
            };
            print!("{}", text);
            ExitCode::from(rep.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}
