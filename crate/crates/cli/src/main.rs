//! `dtm`: series operations, the equation solver, the Bratu workflow and a
//! multiply-count benchmark.
//!
//! Data goes to standard output (or `--out`); summaries and diagnostics go
//! to standard error. Exit codes: 0 success, 2 input or parse error,
//! 3 domain error, 4 no solution.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "dtm",
    version,
    about = "Differential transformation method toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integer power or exponential of a series file.
    Ops {
        #[command(subcommand)]
        op: OpsCommand,
    },
    /// Solve an explicit ODE `D(u,m) = expr` as a coefficient recurrence.
    Solve(SolveArgs),
    /// Solve the planar Bratu problem and compare against the closed form.
    Bratu(BratuArgs),
    /// Compare multiply counts and timings of recurrence and naive paths.
    Bench(BenchArgs),
}

#[derive(Debug, Subcommand)]
enum OpsCommand {
    /// Raise the series to a non-negative integer power.
    Pow {
        #[arg(long)]
        m: u32,
        #[command(flatten)]
        io: OpsIo,
    },
    /// Exponential of the series.
    Exp {
        #[command(flatten)]
        io: OpsIo,
    },
}

#[derive(Debug, Args)]
struct OpsIo {
    /// Use the repeated-product oracle instead of the recurrence.
    #[arg(long)]
    naive: bool,
    /// Print the multiply count to standard error.
    #[arg(long)]
    count: bool,
    /// Input series file (JSON or CSV); standard input when absent.
    #[arg(long = "in")]
    input: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct SolveArgs {
    /// Equation text, e.g. "D(u,2) = -1 * exp(u)".
    #[arg(long)]
    eq: String,
    /// Initial values u0,u1,...,u_{m-1}.
    #[arg(long, allow_hyphen_values = true)]
    ic: String,
    #[arg(long)]
    order: usize,
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BranchArg {
    Lower,
    Upper,
}

#[derive(Debug, Args)]
struct BratuArgs {
    #[arg(long)]
    lambda: f64,
    #[arg(long)]
    order: usize,
    #[arg(long, default_value_t = 101)]
    grid: usize,
    #[arg(long, value_enum, default_value_t = BranchArg::Lower)]
    branch: BranchArg,
    /// Comparison CSV destination; standard output when absent.
    #[arg(long)]
    out_csv: Option<String>,
    /// Summary JSON destination; standard error when absent.
    #[arg(long)]
    out_json: Option<String>,
    #[arg(long, default_value_t = 50.0)]
    gamma_max: f64,
    #[arg(long, default_value_t = 0.25)]
    gamma_step: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchOp {
    Pow,
    Exp,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_enum)]
    op: BenchOp,
    #[arg(long)]
    order: usize,
    #[arg(long, default_value_t = 2)]
    m: u32,
    #[arg(long, default_value_t = 10)]
    reps: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ops { op } => commands::ops(op),
        Command::Solve(args) => commands::solve(args),
        Command::Bratu(args) => commands::bratu(args),
        Command::Bench(args) => commands::bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
