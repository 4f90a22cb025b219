use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use noether::abduce::Exactness;
use noether_cli::bench::{bench, BenchArgs, Protocol};
use noether_cli::commands::{abduce, abduce_options, check, decompose, AbduceArgs, CheckArgs, DecomposeArgs};
use noether_cli::{Failure, Output};

#[derive(Parser)]
#[command(name = "noether", version, about = "Find missing axioms of polynomial systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExactnessArg {
    Encoded,
    Nontrivial,
}

impl From<ExactnessArg> for Exactness {
    fn from(e: ExactnessArg) -> Self {
        match e {
            ExactnessArg::Encoded => Exactness::Encoded,
            ExactnessArg::Nontrivial => Exactness::Nontrivial,
        }
    }
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct Budget {
    /// Decomposition branch budget.
    #[arg(long, env = "NOETHER_MAX_NODES", default_value_t = 512)]
    max_nodes: usize,
    /// Per-report wall-clock limit; 0 disables it.
    #[arg(long, default_value_t = 120)]
    timeout_secs: u64,
    #[arg(long, value_enum, default_value = "encoded")]
    exactness: ExactnessArg,
}

#[derive(Subcommand)]
enum Command {
    /// Test whether a hypothesis follows from the axioms.
    Check {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        hypothesis: String,
        /// Axioms to leave out, comma separated.
        #[arg(long)]
        drop: Vec<String>,
        /// Print the cofactor of each axiom.
        #[arg(long)]
        certificate: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Print the minimal primes of the axiom ideal.
    Decompose {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        drop: Vec<String>,
        /// Add the named hypothesis to the ideal.
        #[arg(long)]
        with_hypothesis: Option<String>,
        #[arg(long, env = "NOETHER_MAX_NODES", default_value_t = 512)]
        max_nodes: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Propose replacements for dropped axioms.
    Abduce {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        hypothesis: String,
        #[arg(long)]
        drop: Vec<String>,
        /// Run the full system, then remove each axiom in turn.
        #[arg(long)]
        scan_inconsistent: bool,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        common: Common,
    },
    /// Run a recovery protocol over a corpus directory.
    Bench {
        #[arg(long, default_value = "corpus")]
        corpus: PathBuf,
        #[arg(long, value_enum)]
        protocol: Option<Protocol>,
        /// Systems to run, comma separated file stems.
        #[arg(long)]
        systems: Vec<String>,
        /// Expectations to diff against.
        #[arg(long)]
        expected: Option<PathBuf>,
        #[arg(long)]
        hypothesis: Option<String>,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        common: Common,
    },
}

fn run(cli: Cli) -> (Result<Output, Failure>, Format) {
    match cli.command {
        Command::Check { system, hypothesis, drop, certificate, common } => {
            (check(&CheckArgs { system: &system, hypothesis: &hypothesis, drop: &drop, certificate }), common.format)
        }
        Command::Decompose { system, drop, with_hypothesis, max_nodes, common } => (
            decompose(&DecomposeArgs { system: &system, drop: &drop, with_hypothesis: with_hypothesis.as_deref(), max_nodes }),
            common.format,
        ),
        Command::Abduce { system, hypothesis, drop, scan_inconsistent, budget, common } => {
            let options = abduce_options(budget.max_nodes, budget.timeout_secs, budget.exactness.into());
            (abduce(&AbduceArgs { system: &system, hypothesis: &hypothesis, drop: &drop, scan_inconsistent, options }), common.format)
        }
        Command::Bench { corpus, protocol, systems, expected, hypothesis, budget, common } => {
            let options = abduce_options(budget.max_nodes, budget.timeout_secs, budget.exactness.into());
            (bench(&BenchArgs { corpus, protocol, systems, expected, hypothesis, options }), common.format)
        }
    }
}

fn main() -> ExitCode {
    let (result, format) = run(Cli::parse());
    match result {
        Ok(out) => {
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("json") + "\n",
                Format::Text => out.text,
            };
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::from(out.code as u8)
        }
        Err(f) => {
            eprintln!("noether: {}", f.message);
            ExitCode::from(f.code as u8)
        }
    }
}
