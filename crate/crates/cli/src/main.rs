use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use factorsat_cli::{
    run_bench, run_encode, run_solve, run_verify, CliError, ProblemKind, RunConfig, SolverChoice,
    Status,
};
use factorsat_core::IntervalMode;

/// Reduce factorization problems over partially known binary numbers to SAT.
#[derive(Debug, Parser)]
#[command(name = "factorsat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the CNF encoding as DIMACS plus a JSON sidecar.
    Encode {
        #[command(flatten)]
        problem: ProblemArgs,
        /// DIMACS output path; the sidecar goes to `<path>.json`.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve an encoding and print the factorization found.
    Solve {
        #[command(flatten)]
        problem: ProblemArgs,
        #[arg(long, value_enum, default_value_t)]
        solver: SolverChoice,
        /// Model file (`v ... 0` lines) from an external solver.
        #[arg(long)]
        model: Option<PathBuf>,
        /// Write the model found by the internal solver.
        #[arg(long)]
        emit_model: Option<PathBuf>,
        /// Maximum number of branching decisions.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Compare encoder verdicts with brute-force answers.
    Verify {
        #[arg(long, value_enum, default_value_t)]
        problem: ProblemKind,
        /// Enumerate every pattern up to --max-bits digits.
        #[arg(long)]
        exhaustive: bool,
        /// Widest pattern (composite) or number (factoring).
        #[arg(long, visible_alias = "max-n")]
        max_bits: Option<usize>,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, env = "FACTORSAT_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget: Option<u64>,
        /// CSV path for disagreements; stdout when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Encoding sizes for all-free patterns over a range of widths.
    Bench {
        #[arg(long, default_value_t = 2)]
        min_n: usize,
        #[arg(long, default_value_t = 64)]
        max_n: usize,
        /// Leave the encode_time column empty so output is reproducible.
        #[arg(long)]
        no_timing: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct ProblemArgs {
    /// Digits MSB first over {0, 1, -}, e.g. 1-0-1.
    #[arg(long, allow_hyphen_values = true)]
    pattern: Option<String>,
    /// Comma-separated digits, e.g. 1,0,-,1.
    #[arg(long, allow_hyphen_values = true)]
    pattern_vector: Option<String>,
    #[arg(long, value_enum, default_value_t)]
    problem: ProblemKind,
    #[arg(long)]
    lower: Option<u64>,
    #[arg(long)]
    upper: Option<u64>,
    /// closed [L, U] or open (L, U).
    #[arg(long, default_value = "closed")]
    interval: IntervalMode,
    /// Extra condition, e.g. "low(P,3) == low(B,3)"; may repeat.
    #[arg(long = "cond")]
    conditions: Vec<String>,
}

impl ProblemArgs {
    fn into_config(self) -> Result<RunConfig, CliError> {
        let cfg = RunConfig {
            pattern: RunConfig::pattern_from_args(
                self.pattern.as_deref(),
                self.pattern_vector.as_deref(),
            )?,
            problem: self.problem,
            lower: self.lower,
            upper: self.upper,
            interval: self.interval,
            conditions: self.conditions,
            ..RunConfig::default()
        };
        cfg.bounds()?;
        Ok(cfg)
    }
}

type Runner = fn(&RunConfig, &mut dyn Write) -> Result<Status, CliError>;

fn config(command: Command) -> Result<(RunConfig, Runner), CliError> {
    Ok(match command {
        Command::Encode { problem, output } => (
            RunConfig {
                output,
                ..problem.into_config()?
            },
            run_encode,
        ),
        Command::Solve {
            problem,
            solver,
            model,
            emit_model,
            budget,
        } => (
            RunConfig {
                solver,
                model,
                emit_model,
                budget,
                ..problem.into_config()?
            },
            run_solve,
        ),
        Command::Verify {
            problem,
            exhaustive,
            max_bits,
            samples,
            seed,
            budget,
            output,
        } => {
            let default_bits = match problem {
                ProblemKind::Composite => 8,
                ProblemKind::Factoring => 14,
            };
            let cfg = RunConfig {
                problem,
                exhaustive,
                max_bits: max_bits.unwrap_or(default_bits),
                samples,
                seed,
                budget,
                output,
                ..RunConfig::default()
            };
            (cfg, run_verify)
        }
        Command::Bench {
            min_n,
            max_n,
            no_timing,
            output,
        } => {
            let cfg = RunConfig {
                bench_range: (min_n, max_n),
                timing: !no_timing,
                output,
                ..RunConfig::default()
            };
            (cfg, run_bench)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let result = config(cli.command).and_then(|(cfg, run)| run(&cfg, &mut stdout.lock()));
    match result {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("factorsat: {e}");
            ExitCode::from(e.status.code())
        }
    }
}
