//! Command-line front end: corpus generation, synthesis, validation, and
//! duck-curve scenarios over the file formats defined by the core crate.

pub mod commands;
mod output;

use anyhow::Result;
use clap::{Parser, Subcommand};

pub use commands::gen_corpus::GenCorpusArgs;
pub use commands::scenario::ScenarioArgs;
pub use commands::synth::SynthArgs;
pub use commands::validate::ValidateArgs;

#[derive(Debug, Parser)]
#[command(
    name = "loadsynth",
    about = "Synthesize, validate, and stress hourly bus-level load time series",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a deterministic desk-scale prototype corpus.
    GenCorpus(GenCorpusArgs),
    /// Synthesize per-bus yearly series from a bus table and a corpus.
    Synth(SynthArgs),
    /// Compute validation metrics and check them against reference bands.
    Validate(ValidateArgs),
    /// Build a behind-the-meter solar duck-curve scenario.
    Scenario(ScenarioArgs),
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::GenCorpus(args) => commands::gen_corpus::run(&args),
        Command::Synth(args) => commands::synth::run(&args),
        Command::Validate(args) => commands::validate::run(&args),
        Command::Scenario(args) => commands::scenario::run(&args),
    }
}
