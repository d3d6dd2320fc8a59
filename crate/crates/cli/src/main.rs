//! `strato`: exact expectations of iterated Stratonovich integrals, their
//! Itô decompositions, and a Monte Carlo cross-check.

mod render;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use strato::convert::strat_to_ito;
use strato::expect::{expect_strat, expectation_table};
use strato::montecarlo::{estimate_expectation_with, SimConfig, SimOptions};
use strato::{Error, Rational, Word};

#[derive(Debug, Parser)]
#[command(name = "strato", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact E J_α(t) as a monomial in t.
    Expect {
        /// Multi-index, comma-separated (e.g. 0,1,1). Empty for the empty word.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Evaluate at this time (integer, n/d or decimal).
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Expand J_α in the Itô basis.
    Decompose {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[command(flatten)]
        common: Common,
    },
    /// List every word with nonzero expectation.
    Table {
        #[arg(long)]
        max_len: usize,
        /// Number of Wiener drivers (letters 1..=drivers).
        #[arg(long)]
        drivers: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Monte Carlo estimate of E J_α(t).
    Simulate {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value_t = 100_000)]
        paths: u64,
        #[arg(long, default_value_t = 256)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (default: all cores). Does not affect the output.
        #[arg(long)]
        threads: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

fn exit_code(err: &Error) -> u8 {
    if err.is_resource_cap() {
        3
    } else if matches!(err, Error::Invariant(_)) {
        1
    } else {
        2
    }
}

fn run(cli: Cli) -> Result<String, Error> {
    match cli.command {
        Command::Expect { word, t, common } => {
            let word: Word = word.parse()?;
            let t = t.map(|t| t.parse::<Rational>()).transpose()?;
            if let Some(t) = &t {
                if t.is_negative() {
                    return Err(Error::Domain(format!("time must be nonnegative, got {t}")));
                }
            }
            let result = expect_strat(&word);
            Ok(render::expect(&word, &result, t.as_ref(), common.format))
        }
        Command::Decompose { word, common } => {
            let word: Word = word.parse()?;
            let combination = strat_to_ito(&word)?;
            Ok(render::decompose(&word, &combination, common.format))
        }
        Command::Table {
            max_len,
            drivers,
            common,
        } => {
            let rows = expectation_table(max_len, drivers)?;
            Ok(render::table(&rows, common.format))
        }
        Command::Simulate {
            word,
            t,
            paths,
            steps,
            seed,
            threads,
            common,
        } => {
            let cfg = SimConfig {
                word: word.parse()?,
                horizon: t,
                steps,
                paths,
                seed,
            };
            if threads == Some(0) {
                return Err(Error::Config("threads must be at least 1".into()));
            }
            let opts = SimOptions {
                threads,
                ..SimOptions::default()
            };
            let result = estimate_expectation_with(&cfg, &opts)?;
            Ok(render::simulate(&cfg, &result, common.format))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
