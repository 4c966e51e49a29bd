//! `dscodes` — construct codes over F_p + uF_p from down sets, compute exact
//! Lee weight distributions by independent methods, and check optimality of
//! the Gray images.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 invalid input,
//! 3 budget exceeded.

mod commands;

use clap::{Args, Parser, Subcommand, ValueEnum};
use downset_codes::{Error, DEFAULT_BUDGET};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "dscodes", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one code: parameters, weight distribution, dual class, bounds.
    Analyze(AnalyzeArgs),
    /// Cross-check the independent weight-distribution methods.
    Verify(VerifyArgs),
    /// Emit the reference table of distance-optimal Gray images.
    Table5(Table5Args),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Complement,
    Direct,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Brute,
    Analytic,
    Table,
    Auto,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Prime modulus.
    #[arg(long)]
    p: u64,
    /// Dimension of the ambient space F_p^m.
    #[arg(long)]
    m: usize,
    /// Down-set generators: coordinates ','-separated, generators
    /// ';'-separated, e.g. "2,1,0;1,2,0". Empty for the empty down set.
    #[arg(long, default_value = "")]
    gens: String,
    /// Which side of the down set indexes the code coordinates.
    #[arg(long, value_enum, default_value = "complement")]
    variant: VariantArg,
    /// Distribution method. "auto" is analytic cross-checked by brute force
    /// when the budget allows.
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    /// Budget in elementary coordinate evaluations.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Closed-form family to sweep (1..=4). Requires --r.
    #[arg(long, conflicts_with = "random")]
    family: Option<u8>,
    #[arg(long)]
    p: u64,
    #[arg(long)]
    m: usize,
    /// r value or inclusive range "a..b".
    #[arg(long)]
    r: Option<String>,
    /// Instead of a family sweep: this many random down sets, checking the
    /// analytic distribution against the brute-force oracle.
    #[arg(long)]
    random: Option<u64>,
    /// Seed for the random-down-set generator.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Table5Args {
    /// Odd prime.
    #[arg(long)]
    p: u64,
    /// Comma-separated list of dimensions, each >= 3, e.g. "3,4".
    #[arg(long)]
    m: String,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::BudgetExceeded { .. } => 3,
        Error::VerificationMismatch(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Analyze(args) => commands::analyze(args),
        Command::Verify(args) => commands::verify(args),
        Command::Table5(args) => commands::table5(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
