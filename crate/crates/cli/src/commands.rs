use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::time::Instant;

use dtm_core::bratu::{compare_with, Branch, ShootConfig};
use dtm_core::io::{read_series, write_comparison_csv, write_series_csv, write_series_json};
use dtm_core::lang::{lower, parse};
use dtm_core::{exp_naive_counted, exp_series, pow_int, pow_naive, Error, OpCount, Series};
use serde::Serialize;

use crate::{BenchArgs, BenchOp, BranchArg, BratuArgs, Format, OpsCommand, OpsIo, SolveArgs};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Domain(String),
    NoSolution(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Domain(_) => 3,
            CliError::NoSolution(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Domain(m) | CliError::NoSolution(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Syntax { .. }
            | Error::ImplicitForm { .. }
            | Error::Unsupported { .. }
            | Error::InvalidSeries(_)
            | Error::InitialConditions { .. }
            | Error::InvalidArgument(_) => CliError::Input(msg),
            Error::NoSignChange { .. } | Error::NoAnalyticRoot { .. } => CliError::NoSolution(msg),
            Error::OrderMismatch { .. }
            | Error::DerivativeTooHigh { .. }
            | Error::ZeroToZero
            | Error::Causality { .. }
            | Error::PowOfZeroConstant { .. }
            | Error::NonFinite { .. } => CliError::Domain(msg),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_input(path: Option<&str>) -> CliResult<String> {
    match path {
        Some(p) => {
            fs::read_to_string(p).map_err(|e| CliError::Input(format!("cannot read {p}: {e}")))
        }
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn write_output(path: Option<&str>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => {
            fs::write(p, text).map_err(|e| CliError::Input(format!("cannot write {p}: {e}")))
        }
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Input(format!("cannot write stdout: {e}"))),
    }
}

fn render(series: &Series, format: Format) -> String {
    match format {
        Format::Json => write_series_json(series) + "\n",
        Format::Csv => write_series_csv(series),
    }
}

pub fn ops(cmd: OpsCommand) -> CliResult<()> {
    let (io, result) = match cmd {
        OpsCommand::Pow { m, io } => {
            let a = read_series(&read_input(io.input.as_deref())?)?;
            let r = if io.naive {
                pow_naive(&a, m)?
            } else {
                pow_int(&a, m)?
            };
            (io, r)
        }
        OpsCommand::Exp { io } => {
            let a = read_series(&read_input(io.input.as_deref())?)?;
            let r = if io.naive {
                exp_naive_counted(&a)?
            } else {
                exp_series(&a)?
            };
            (io, r)
        }
    };
    finish_ops(&io, result)
}

fn finish_ops(io: &OpsIo, (series, count): (Series, OpCount)) -> CliResult<()> {
    if io.count {
        eprintln!("multiplies: {}", count.multiplies);
    }
    write_output(io.out.as_deref(), &render(&series, io.format))
}

fn parse_ic(text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(|v| {
            let v = v.trim();
            v.parse::<f64>()
                .map_err(|_| CliError::Input(format!("bad initial value '{v}' in --ic")))
        })
        .collect()
}

/// Points a caret at the failing byte offset of the equation text.
fn caret(text: &str, pos: usize) -> String {
    let col = text
        .get(..pos.min(text.len()))
        .map_or(pos, |s| s.chars().count());
    format!("  {text}\n  {}^", " ".repeat(col))
}

pub fn solve(args: SolveArgs) -> CliResult<()> {
    let eq = parse(&args.eq).map_err(|e| {
        if let Error::Syntax { pos, .. }
        | Error::ImplicitForm { pos, .. }
        | Error::Unsupported { pos, .. } = e
        {
            eprintln!("{}", caret(&args.eq, pos));
        }
        CliError::from(e)
    })?;
    let ic = parse_ic(&args.ic)?;
    let series = lower(&eq, args.order)?.run(&ic)?;
    write_output(args.out.as_deref(), &render(&series, args.format))
}

#[derive(Debug, Serialize)]
struct BratuSummary {
    lambda: f64,
    gamma: f64,
    theta: f64,
    residual: f64,
    max_abs_err: f64,
    order: usize,
}

pub fn bratu(args: BratuArgs) -> CliResult<()> {
    if !(1e-3..=10.0).contains(&args.lambda) {
        return Err(CliError::Input(format!(
            "--lambda must lie in [1e-3, 10], got {}",
            args.lambda
        )));
    }
    let branch = match args.branch {
        BranchArg::Lower => Branch::Lower,
        BranchArg::Upper => Branch::Upper,
    };
    let config = ShootConfig {
        gamma_max: args.gamma_max,
        gamma_step: args.gamma_step,
        ..ShootConfig::default()
    };
    let cmp = compare_with(args.lambda, args.order, args.grid, branch, &config)?;
    write_output(args.out_csv.as_deref(), &write_comparison_csv(&cmp.rows))?;
    let summary = BratuSummary {
        lambda: args.lambda,
        gamma: cmp.solution.gamma,
        theta: cmp.theta,
        residual: cmp.solution.residual,
        max_abs_err: cmp.max_abs_err,
        order: args.order,
    };
    let json = serde_json::to_string(&summary).expect("finite summary") + "\n";
    match args.out_json.as_deref() {
        Some(p) => {
            fs::write(p, json).map_err(|e| CliError::Input(format!("cannot write {p}: {e}")))
        }
        None => {
            eprint!("{json}");
            Ok(())
        }
    }
}

#[derive(Debug, Serialize)]
struct BenchReport {
    op: &'static str,
    order: usize,
    m: Option<u32>,
    count_recurrence: u64,
    count_naive: u64,
    ratio: f64,
    time_recurrence_ns: u64,
    time_naive_ns: u64,
}

/// Mean wall time per repetition, plus the count from the last run.
fn timed(reps: u32, mut f: impl FnMut() -> CliResult<OpCount>) -> CliResult<(OpCount, u64)> {
    let reps = reps.max(1);
    let start = Instant::now();
    let mut count = OpCount::default();
    for _ in 0..reps {
        count = f()?;
    }
    Ok((count, (start.elapsed().as_nanos() / reps as u128) as u64))
}

pub fn bench(args: BenchArgs) -> CliResult<()> {
    let coeffs: Vec<f64> = (0..=args.order).map(|k| 1.0 / (k + 1) as f64).collect();
    let a = Series::new(coeffs)?;
    let (op, m, (fast, t_fast), (slow, t_slow)) = match args.op {
        BenchOp::Pow => (
            "pow",
            Some(args.m),
            timed(args.reps, || Ok(pow_int(&a, args.m)?.1))?,
            timed(args.reps, || Ok(pow_naive(&a, args.m)?.1))?,
        ),
        BenchOp::Exp => (
            "exp",
            None,
            timed(args.reps, || Ok(exp_series(&a)?.1))?,
            timed(args.reps, || Ok(exp_naive_counted(&a)?.1))?,
        ),
    };
    let ratio = if fast.multiplies == 0 {
        0.0
    } else {
        slow.multiplies as f64 / fast.multiplies as f64
    };
    let report = BenchReport {
        op,
        order: args.order,
        m,
        count_recurrence: fast.multiplies,
        count_naive: slow.multiplies,
        ratio,
        time_recurrence_ns: t_fast,
        time_naive_ns: t_slow,
    };
    write_output(
        None,
        &(serde_json::to_string(&report).expect("finite report") + "\n"),
    )
}
