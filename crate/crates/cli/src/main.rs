//! `spinplanar`: check quantum-information objects against their biunitary
//! certificates and compute the planar subalgebras they generate.

mod commands;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use spinplanar::qit::DEFAULT_TOLERANCE;
use spinplanar::subfactor::{DEFAULT_KERNEL_TOLERANCE, DEFAULT_ROW_CAP};

use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "spinplanar", version, about = "Spin planar algebra toolkit for biunitaries and their subfactors")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Tolerance for validation, certificates and closure checks
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE, value_parser = positive)]
    pub tol: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Largest allowed operator row count N^(mℓ+k−ℓ)
    #[arg(long, global = true, default_value_t = DEFAULT_ROW_CAP)]
    pub cap: u128,

    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Assemble operators on one thread
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate an object and run its biunitarity certificate
    Check {
        #[arg(long)]
        input: PathBuf,
    },
    /// Object JSON to element coefficients, or element coefficients back to an object
    Convert {
        #[arg(long)]
        input: PathBuf,
        /// Object type to read an element back as (defaults to its `source`)
        #[arg(long)]
        to: Option<String>,
    },
    /// Dimensions of the planar subalgebra generated by a biunitary
    Qdims {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_level: usize,
        /// Relative singular-value threshold for kernels
        #[arg(long, default_value_t = DEFAULT_KERNEL_TOLERANCE, value_parser = positive)]
        kernel_tol: f64,
        /// Also verify closure under the generating tangles
        #[arg(long)]
        closure: bool,
    },
    /// Group Latin square: computed dimensions against the group predictions
    Group {
        /// Builtin group: Z2..Z6 or S3
        #[arg(long, conflicts_with = "input", required_unless_present = "input")]
        name: Option<String>,
        /// Multiplication table, 1-based, as a JSON array or a `latin` object
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        max_level: usize,
        #[arg(long, default_value_t = DEFAULT_KERNEL_TOLERANCE, value_parser = positive)]
        kernel_tol: f64,
    },
    /// Randomized relation suite for the algebra and tangle operations
    Selftest {
        #[arg(long, default_value_t = 2)]
        spins: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 5)]
        max_width: usize,
    },
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(_) => Err("must be a positive finite number".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let g = &cli.global;
    match cli.command {
        Command::Check { input } => commands::check(g, &input),
        Command::Convert { input, to } => commands::convert(&input, to.as_deref(), g.tol),
        Command::Qdims { input, max_level, kernel_tol, closure } => {
            commands::qdims(g, &input, max_level, kernel_tol, closure)
        }
        Command::Group { name, input, max_level, kernel_tol } => {
            commands::group(g, name.as_deref(), input.as_deref(), max_level, kernel_tol)
        }
        Command::Selftest { spins, samples, max_width } => commands::selftest(g, spins, samples, max_width),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
