use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

/// Parabolic quantum Bruhat graphs, quantum LS paths and their degrees.
#[derive(Parser)]
#[command(name = "qbruhat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Export the parabolic quantum Bruhat graph.
    Qbg(Common),
    /// List quantum LS paths.
    Qls {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = VariantArg::Hat)]
        variant: VariantArg,
    },
    /// Degree table, or one row with --path.
    Degree {
        #[command(flatten)]
        common: Common,
        /// Path literal "w;w|0,σ,1" or a JSON record.
        #[arg(long)]
        path: Option<String>,
    },
    /// Run the oracle suites.
    Verify(Common),
}

#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Cartan type, e.g. A2.
    #[arg(long = "type")]
    pub cartan_type: String,

    /// Multiplicities m_i of λ = Σ m_i ϖ_i, e.g. 2,1.
    #[arg(long)]
    pub lambda: String,

    /// Explicit J (1-based, comma separated; empty for J = ∅).
    #[arg(long)]
    pub parabolic: Option<String>,

    #[arg(long, value_enum)]
    pub format: Option<Format>,

    /// δ-window for the affine oracle.
    #[arg(long)]
    pub window: Option<i64>,

    /// Maximum number of paths to enumerate.
    #[arg(long, default_value_t = qbruhat::qls::PATH_CAP)]
    pub cap: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dot,
    Json,
    Csv,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VariantArg {
    Hat,
    Tilde,
    Unconstrained,
}

/// Exit status 2 for bad input, 1 for a failed check or limit.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Check(String),
}

impl From<qbruhat::Error> for Failure {
    fn from(e: qbruhat::Error) -> Self {
        use qbruhat::Error::*;
        match e {
            InvalidType { .. }
            | BadTypeName(_)
            | RankMismatch { .. }
            | ZeroWeight
            | BadParabolic(_)
            | GroupTooLarge { .. }
            | Parse(_)
            | ZeroDenominator
            | SigmaOutOfRange(_) => Failure::Input(e.to_string()),
            _ => Failure::Check(e.to_string()),
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("QBRUHAT_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("QBRUHAT_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Input(e.to_string()))
}

fn run(cli: Cli) -> Result<commands::Outcome, Failure> {
    configure_threads()?;
    match cli.command {
        Command::Qbg(c) => commands::qbg(&c),
        Command::Qls { common, variant } => commands::qls(&common, variant),
        Command::Degree { common, path } => commands::degree(&common, path.as_deref()),
        Command::Verify(c) => commands::verify(&c),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
