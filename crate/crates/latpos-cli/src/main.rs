//! `latpos`: build lattice-path matrices and run the positivity checks from the shell.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "latpos", version, about = "Exact lattice-path matrices and total-positivity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a truncation of the path matrix.
    Gen {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long, default_value_t = 6)]
        rows: usize,
        #[arg(long, default_value_t = 6)]
        cols: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check that every minor of a truncation up to the given order is nonnegative.
    Tp {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[arg(long, default_value_t = 8)]
        rows: usize,
        #[arg(long, default_value_t = 8)]
        cols: usize,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Total positivity of the Toeplitz matrix of a row, column or diagonal.
    Toeplitz {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[command(flatten)]
        line: LineArgs,
        #[arg(long, default_value_t = 6)]
        window: usize,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Build a planar network, compare its walk matrix and expand its small minors.
    Lgv {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[command(flatten)]
        net: NetArgs,
        /// Largest minor order expanded into disjoint path systems.
        #[arg(long, default_value_t = 3)]
        order: usize,
        /// Include the network itself in the report.
        #[arg(long)]
        emit_network: bool,
    },
    /// Compare the Riordan-array entries with the recurrence.
    Riordan {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[command(flatten)]
        factors: FactorArgs,
        /// Largest row index compared.
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Pólya frequency and log-concavity report for one sequence.
    Seq {
        #[command(flatten)]
        scheme: SchemeArgs,
        #[command(flatten)]
        line: LineArgs,
        /// Number of terms; rows of finite length default to their full length.
        #[arg(long)]
        len: Option<usize>,
        /// Treat the extracted terms as the whole sequence.
        #[arg(long)]
        finite: bool,
        /// Require the Pólya frequency check to pass.
        #[arg(long)]
        pf: bool,
        /// Require this many nonnegative iterates of the L-operator.
        #[arg(long, value_name = "R")]
        logconcave: Option<usize>,
        #[arg(long)]
        window: Option<usize>,
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// Check every consequence of a real-rooted band polynomial instead of one sequence.
        #[arg(long)]
        hypothesis: bool,
    },
    /// List the named schemes.
    Catalog,
    /// Run the full verification battery.
    VerifyAll {
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Args, Debug, Default)]
struct SchemeArgs {
    /// Named scheme from the catalog.
    #[arg(long, conflicts_with = "scheme")]
    catalog: Option<String>,
    /// Catalog parameter as `name=value`; repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// Scheme as inline JSON or a path to a JSON file.
    #[arg(long)]
    scheme: Option<String>,
    /// Orientation for `--scheme`.
    #[arg(long, value_enum)]
    orientation: Option<OrientationArg>,
}

#[derive(Args, Debug, Default)]
struct LineArgs {
    #[arg(long, conflicts_with_all = ["column", "diagonal"])]
    row: Option<usize>,
    #[arg(long, conflicts_with = "diagonal")]
    column: Option<usize>,
    /// `n,k,delta,sigma`: the terms `M[n + delta i][k + sigma i]`.
    #[arg(long, value_name = "N,K,DELTA,SIGMA")]
    diagonal: Option<String>,
}

#[derive(Args, Debug)]
struct NetArgs {
    #[arg(long, value_enum, default_value_t = NetworkKind::GammaStar)]
    network: NetworkKind,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    delta: usize,
    #[arg(long, default_value_t = 2)]
    sigma: usize,
    /// Window size minus one for the diagonal network.
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Factorisation recipe 1 to 4 for width-three bands.
    #[arg(long)]
    recipe: Option<u8>,
    #[command(flatten)]
    factors: FactorArgs,
}

#[derive(Args, Debug, Default)]
struct FactorArgs {
    /// Comma-separated `alpha_j` with `sum a_i z^i = prod (alpha_j z + beta_j)`.
    #[arg(long, requires = "betas")]
    alphas: Option<String>,
    /// Comma-separated `beta_j`.
    #[arg(long, requires = "alphas")]
    betas: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OrientationArg {
    M,
    T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum NetworkKind {
    /// One stage: the production matrix.
    Gamma,
    /// Stages glued: the path matrix.
    GammaStar,
    /// Toeplitz window of a row.
    Diamond,
    /// Toeplitz window of a diagonal.
    Circ,
}

/// Why a command stopped without a verdict.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Cap(m) => m,
        }
    }
}

/// What a command prints, and whether its checks passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

fn configure_threads() {
    if let Some(n) = std::env::var("LATPOS_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        if n > 0 {
            // fails only if a pool already exists
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.to_string().lines().next().unwrap_or_default().trim_start_matches("error: ").to_string();
            println!("{}", json!({ "code": 2, "message": message }));
            return ExitCode::from(2);
        }
    };
    configure_threads();
    match commands::run(cli.command) {
        Ok(out) => {
            print!("{}", out.text);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            println!("{}", json!({ "code": f.code(), "message": f.message() }));
            ExitCode::from(f.code())
        }
    }
}
