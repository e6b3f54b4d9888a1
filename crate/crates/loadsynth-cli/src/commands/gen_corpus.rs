//! `gen-corpus`: write a deterministic desk corpus to a directory.

use crate::output::write_atomic;
use anyhow::{Context, Result};
use clap::Args;
use loadsynth::ingest::desk::{generate_desk_buses, generate_desk_corpus};
use loadsynth::ingest::{
    write_bus_table, write_facility_table, write_prototype_corpus, write_sector_curves,
    write_solar_table, write_utility_table,
};
use std::path::PathBuf;

#[derive(Debug, Args)]
pub struct GenCorpusArgs {
    /// Master seed for the generator.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Number of prototype locations (each carries one residential and
    /// sixteen commercial profiles).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub locations: u32,

    /// Comma-separated region tags.
    #[arg(long, value_delimiter = ',', default_value = "north,south")]
    pub regions: Vec<String>,

    /// Number of desk buses to emit in buses.csv.
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u32).range(1..))]
    pub buses: u32,

    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(args: &GenCorpusArgs) -> Result<()> {
    let corpus = generate_desk_corpus(args.seed, args.locations as usize, &args.regions)
        .context("generating desk corpus")?;
    let buses = generate_desk_buses(args.seed, args.buses as usize, &corpus)
        .context("generating desk bus table")?;

    std::fs::create_dir_all(&args.out)
        .with_context(|| format!("creating {}", args.out.display()))?;
    write_prototype_corpus(&corpus.profiles, &args.out).context("writing profile corpus")?;

    let mut buf = Vec::new();
    write_facility_table(&corpus.facilities, &mut buf)?;
    write_atomic(&args.out.join("facilities.csv"), &buf)?;

    let mut buf = Vec::new();
    write_sector_curves(&corpus.sector_curves, &mut buf)?;
    write_atomic(&args.out.join("sector_curves.csv"), &buf)?;

    let mut buf = Vec::new();
    write_utility_table(&corpus.utilities, &mut buf)?;
    write_atomic(&args.out.join("utilities.csv"), &buf)?;

    let mut buf = Vec::new();
    write_solar_table(&corpus.solar, &mut buf)?;
    write_atomic(&args.out.join("solar.csv"), &buf)?;

    let mut buf = Vec::new();
    write_bus_table(&buses, &mut buf)?;
    write_atomic(&args.out.join("buses.csv"), &buf)?;

    println!(
        "corpus: {} profiles, {} facilities, {} utilities, {} buses -> {}",
        corpus.profiles.len(),
        corpus.facilities.len(),
        corpus.utilities.len(),
        buses.len(),
        args.out.display()
    );
    Ok(())
}
