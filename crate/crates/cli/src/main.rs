//! `qdt`: evaluate acts, check axioms and synthesize Sugeno representations
//! from JSON documents.

mod commands;
mod document;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use qdt::Budget;

use commands::{Kind, Method, SynthesisMode};
use report::Report;

#[derive(Parser)]
#[command(name = "qdt", version, about = "Qualitative decision theory with Sugeno integrals")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Largest number of act tuples an exhaustive search may enumerate.
    #[arg(long, global = true, env = "QDT_BUDGET", default_value_t = Budget::DEFAULT_LIMIT)]
    budget: u128,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sugeno utility of acts under a frame.
    Eval {
        frame: PathBuf,
        /// An act name or comma-separated outcome labels; repeatable.
        #[arg(long = "act")]
        acts: Vec<String>,
        /// Evaluate every act of the space.
        #[arg(long, conflicts_with = "acts")]
        all: bool,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Validate a frame's capacity and classify it.
    CheckCapacity { frame: PathBuf },
    /// Check axioms on a relation.
    CheckAxioms {
        relation: PathBuf,
        /// Comma-separated axiom ids, or `all`.
        #[arg(long, default_value = "all")]
        axioms: String,
    },
    /// Rebuild a Sugeno representation from a relation.
    Synthesize {
        relation: PathBuf,
        #[arg(long, value_enum, default_value_t = SynthesisMode::General)]
        mode: SynthesisMode,
    },
    /// Search for a documented counterexample.
    Counterexample {
        #[arg(long, value_enum)]
        kind: Kind,
        frame: Option<PathBuf>,
    },
    /// Sugeno utility against expected utility on the same acts.
    Compare {
        frame: PathBuf,
        /// One probability per state, comma-separated.
        #[arg(long)]
        probabilities: String,
        /// One payoff per outcome; defaults to the utility ranks.
        #[arg(long)]
        payoffs: Option<String>,
    },
}

fn run(cli: &Cli) -> Result<Report> {
    let budget = Budget::new(cli.budget);
    match &cli.command {
        Command::Eval { frame, acts, all, method } => commands::eval(frame, acts, *all, *method),
        Command::CheckCapacity { frame } => commands::check_capacity(frame),
        Command::CheckAxioms { relation, axioms } => commands::check_axioms(relation, axioms, budget),
        Command::Synthesize { relation, mode } => commands::synthesize(relation, *mode, budget),
        Command::Counterexample { kind, frame } => commands::counterexample(*kind, frame.as_deref(), budget),
        Command::Compare {
            frame,
            probabilities,
            payoffs,
        } => commands::compare(frame, probabilities, payoffs.as_deref(), budget),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("json values print"));
            } else {
                for line in &report.lines {
                    println!("{line}");
                }
            }
            ExitCode::from(report.status as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
