use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use feature_tags::{PmiVariant, Strictness};

mod commands;
mod config;
mod error;

use config::{Overrides, RunConfig};
use error::{CliError, CliResult};

/// Extracts feature, negation, adverb and evaluation tags from
/// dependency-parsed product reviews.
#[derive(Debug, Parser)]
#[command(name = "feature-tags", version)]
struct Cli {
    /// TOML run configuration; relative paths inside resolve against its
    /// directory.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    theta_hownet: Option<f64>,
    #[arg(long, global = true)]
    theta_pmi: Option<f64>,
    #[arg(long, global = true, value_parser = parse_from_str::<PmiVariant>)]
    pmi_variant: Option<PmiVariant>,
    #[arg(long, global = true, value_parser = parse_from_str::<Strictness>)]
    strictness: Option<Strictness>,
    #[arg(long, global = true)]
    max_window: Option<usize>,
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write data here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Skip negation detection.
    #[arg(long, global = true)]
    no_negation: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Extract tags from the corpus as JSON lines.
    Extract,
    /// Show the polarity verdict of each word.
    Polarity {
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Score a tag file against the gold annotations.
    Eval,
    /// Print unit count, vocabulary size and the most frequent co-occurring pairs.
    Stats,
}

fn parse_from_str<T: std::str::FromStr<Err = String>>(s: &str) -> Result<T, String> {
    s.parse()
}

fn run(cli: Cli) -> CliResult<()> {
    let overrides = Overrides {
        theta_hownet: cli.theta_hownet,
        theta_pmi: cli.theta_pmi,
        pmi_variant: cli.pmi_variant,
        strictness: cli.strictness,
        max_window: cli.max_window,
        jobs: cli.jobs,
        output: cli.output,
        no_negation: cli.no_negation,
    };
    let config = RunConfig::load(cli.config.as_deref(), &overrides)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = config.jobs {
        pool = pool.num_threads(jobs);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker threads: {e}")))?;
    pool.install(|| match &cli.command {
        Command::Extract => commands::cmd_extract(&config),
        Command::Polarity { words } => commands::cmd_polarity(&config, words),
        Command::Eval => commands::cmd_eval(&config),
        Command::Stats => commands::cmd_stats(&config),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
