mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hatgame::HatError;

#[derive(Parser, Debug)]
#[command(
    name = "hatgame",
    version,
    about = "Exact solver for the two-colour hat guessing game"
)]
struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    /// Graphviz, dominance only
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SortKey {
    Lex,
    Sum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FreeRuleArg {
    Pass,
    Black,
    White,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepModeArg {
    Auto,
    Exhaustive,
    Bnb,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List every adequate set of one size with its loss probability
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        das: usize,
        /// Probability of a white hat, as a/b or a decimal
        #[arg(long, default_value = "1/2")]
        p: String,
        #[arg(long, value_enum, default_value_t = SortKey::Lex)]
        sort: SortKey,
    },
    /// Optimal win probability, optimal sets and their decision matrices
    Solve {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1/2")]
        p: String,
        /// Also list every matrix realising each optimal set (N <= 3)
        #[arg(long)]
        all_matrices: bool,
        /// Branch-and-bound node budget
        #[arg(long)]
        max_nodes: Option<u64>,
    },
    /// Win probability of a decision matrix read from a file (text or JSON)
    Evaluate {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "1/2")]
        p: String,
        #[arg(long)]
        matrix: PathBuf,
        /// Substitution for '*' entries
        #[arg(long, value_enum, default_value_t = FreeRuleArg::Pass)]
        free_rule: FreeRuleArg,
    },
    /// Every optimal matrix by exhaustive search (N <= 3)
    Brute {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "1/2")]
        p: String,
    },
    /// Closed-form optimal win probability sampled on a grid
    Psi {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "0.01")]
        pmin: String,
        #[arg(long, default_value = "0.99")]
        pmax: String,
        #[arg(long, default_value_t = 98)]
        steps: usize,
    },
    /// Dominance between the five-player signature classes
    Dominance {
        /// Lower end of the open interval (rational, sqrt2-1 or 2-sqrt2)
        #[arg(long, default_value = "1/2")]
        from: String,
        #[arg(long, default_value = "1")]
        to: String,
        /// Compare two signatures instead of building the graph
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        pair: Option<Vec<String>>,
    },
    /// Number of optimal minimum-size adequate sets at an exact point
    Nasopt {
        #[arg(long)]
        n: usize,
        /// Rational, sqrt2-1 or 2-sqrt2
        #[arg(long)]
        p: String,
    },
    /// Sizes of the strategy spaces
    Complexity {
        #[arg(long, default_value_t = 2)]
        from: usize,
        #[arg(long, default_value_t = 9)]
        to: usize,
    },
    /// Minimum adequate-set size against known covering-code sizes
    Covering {
        /// Single player count (default: every tabulated one)
        #[arg(long)]
        n: Option<usize>,
    },
    /// Cheapest adequate set of each size in a range
    Sweep {
        #[arg(long)]
        n: usize,
        /// Inclusive range such as 4..16
        #[arg(long)]
        das_range: String,
        #[arg(long, default_value = "1/2")]
        p: String,
        #[arg(long, value_enum, default_value_t = SweepModeArg::Auto)]
        mode: SweepModeArg,
        #[arg(long)]
        max_nodes: Option<u64>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Limit(String),
    Io(std::io::Error),
}

impl From<HatError> for CliError {
    fn from(e: HatError) -> Self {
        match e {
            HatError::ResourceLimit(_) => CliError::Limit(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        builder = builder.num_threads(jobs);
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let result = pool.install(|| commands::run(&cli.command, cli.format));
    match result {
        Ok(text) => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Limit(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
