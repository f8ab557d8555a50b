//! `prefalloc`: solve, evaluate, classify and generate allocation instances.
//!
//! Exit codes: 0 solved or decided yes, 1 decided no, 2 input error,
//! 3 unsupported algorithm for the instance, 4 instance too large for an
//! exhaustive method.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use prefalloc::classify::Objective;

#[derive(Parser)]
#[command(name = "prefalloc", version, about = "Allocate items to agents with preference DAGs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Optimise an objective, or decide a threshold with --threshold.
    Solve(SolveArgs),
    /// Evaluate an allocation: per-agent dissatisfaction, sum and max.
    Eval {
        /// Instance JSON, or - for stdin.
        instance: PathBuf,
        /// Allocation JSON, or - for stdin.
        allocation: PathBuf,
    },
    /// Report graph classes, junction count and the solver each objective
    /// would use.
    Classify {
        /// Instance JSON, or - for stdin.
        instance: PathBuf,
    },
    /// Print a generated instance as JSON.
    Generate(GenerateArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Instance JSON, or - for stdin.
    instance: PathBuf,
    #[arg(long, value_enum, default_value_t = ObjectiveArg::Sum)]
    objective: ObjectiveArg,
    /// `auto`, `oracle` or a solver name such as `minsum-paths`.
    #[arg(long, default_value = "auto")]
    algorithm: String,
    /// Answer whether the objective can be at most this value.
    #[arg(long)]
    threshold: Option<usize>,
    /// Emit JSON (the default).
    #[arg(long, conflicts_with = "table")]
    json: bool,
    /// Emit a plain-text table instead of JSON.
    #[arg(long)]
    table: bool,
    /// Include the wall-clock solve time, which makes output vary
    /// between runs.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("mode").required(true).args(["reduction", "random"])))]
struct GenerateArgs {
    /// Hardness construction: x3c-stars, x3c-trees, sat-2agents,
    /// x3c-matchings or sat-paths.
    #[arg(long, requires = "source")]
    reduction: Option<String>,
    /// Source instance for --reduction: exact-cover JSON or DIMACS CNF,
    /// or - for stdin.
    #[arg(long)]
    source: Option<PathBuf>,
    /// Random instance class: path, disjoint-paths, matching, out-star,
    /// star-forest, out-tree or dag.
    #[arg(long, requires_all = ["items", "agents"])]
    random: Option<String>,
    #[arg(long)]
    items: Option<usize>,
    #[arg(long)]
    agents: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Sum,
    Max,
}

impl From<ObjectiveArg> for Objective {
    fn from(arg: ObjectiveArg) -> Self {
        match arg {
            ObjectiveArg::Sum => Objective::Sum,
            ObjectiveArg::Max => Objective::Max,
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Solve(args) => commands::solve(&args),
        Command::Eval {
            instance,
            allocation,
        } => commands::eval(&instance, &allocation),
        Command::Classify { instance } => commands::classify(&instance),
        Command::Generate(args) => commands::generate(&args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
