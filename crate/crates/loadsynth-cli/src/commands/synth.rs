//! `synth`: run the full synthesis pipeline over a bus table and corpus.

use crate::commands::{BusMetadata, SynthMetadata};
use crate::output::{read_to_string, write_atomic};
use anyhow::{bail, Context, Result};
use clap::Args;
use loadsynth::aggregation::AggregationConfig;
use loadsynth::ingest::{
    parse_bus_table, parse_facility_table, parse_prototype_corpus, parse_sector_curves,
    parse_utility_table, write_hour_blocks, write_series_long,
};
use loadsynth::pipeline::{synthesize_system, SynthesisInputs};
use std::path::PathBuf;

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Bus table CSV (bus_id,lat,lon,peak_mw,power_factor).
    #[arg(long)]
    pub buses: PathBuf,

    /// Corpus directory holding manifest.json, facilities.csv,
    /// sector_curves.csv, and utilities.csv.
    #[arg(long)]
    pub corpus: PathBuf,

    /// Master seed; overrides the seed in --config.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Aggregation config JSON; flags win on conflict.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Worker threads for per-bus synthesis (default: rayon's choice).
    #[arg(long)]
    pub threads: Option<usize>,

    /// Also export reactive power (series_q.csv) at each bus's fixed
    /// power factor.
    #[arg(long)]
    pub reactive: bool,

    /// Output directory (series.csv, meta.json).
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(args: &SynthArgs) -> Result<()> {
    let mut config: AggregationConfig = match &args.config {
        Some(path) => serde_json::from_str(&read_to_string(path)?)
            .with_context(|| format!("parsing {}", path.display()))?,
        None => AggregationConfig::default(),
    };
    if let Some(seed) = args.seed {
        config.master_seed = seed;
    }

    let buses = parse_bus_table(&read_to_string(&args.buses)?)?;
    if buses.is_empty() {
        bail!("bus table {} has no rows", args.buses.display());
    }
    let corpus = parse_prototype_corpus(&args.corpus.join("manifest.json"))?;
    let facilities = parse_facility_table(&read_to_string(&args.corpus.join("facilities.csv"))?)?;
    let sector_curves =
        parse_sector_curves(&read_to_string(&args.corpus.join("sector_curves.csv"))?)?;
    let utilities = parse_utility_table(&read_to_string(&args.corpus.join("utilities.csv"))?)?;

    let inputs = SynthesisInputs {
        buses: &buses,
        corpus: &corpus,
        facilities: &facilities,
        sector_curves: &sector_curves,
        utilities: &utilities,
        config,
    };
    let synthesis = match args.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .context("building thread pool")?
            .install(|| synthesize_system(&inputs)),
        None => synthesize_system(&inputs),
    }?;

    let mut buf = Vec::new();
    write_series_long(
        synthesis.results.iter().map(|r| (r.bus_id, &r.series)),
        &mut buf,
    )?;
    write_atomic(&args.out.join("series.csv"), &buf)?;

    if args.reactive {
        let mut bus_by_id = std::collections::HashMap::new();
        for bus in &buses {
            bus_by_id.insert(bus.bus_id, bus);
        }
        let reactive: Vec<(u64, Vec<f64>)> = synthesis
            .results
            .iter()
            .map(|r| {
                let pf = bus_by_id[&r.bus_id].power_factor;
                let tan_phi = pf.acos().tan();
                (
                    r.bus_id,
                    r.series.values().iter().map(|p| p * tan_phi).collect(),
                )
            })
            .collect();
        let mut buf = Vec::new();
        write_hour_blocks(
            reactive.iter().map(|(id, v)| (*id, v.as_slice())),
            &mut buf,
        )?;
        write_atomic(&args.out.join("series_q.csv"), &buf)?;
    }

    let meta = SynthMetadata {
        seed: config.master_seed,
        config,
        buses: synthesis
            .results
            .iter()
            .zip(&synthesis.assignments)
            .map(|(result, assignment)| {
                let bus = buses
                    .iter()
                    .find(|b| b.bus_id == result.bus_id)
                    .expect("result matches an input bus");
                BusMetadata {
                    bus_id: result.bus_id,
                    lat: bus.location.lat,
                    lon: bus.location.lon,
                    peak_mw: bus.peak_mw,
                    power_factor: bus.power_factor,
                    utility_id: assignment.utility_id.clone(),
                    region: assignment.region.clone(),
                    ratio: assignment.ratio,
                    reference_load_factor: result.reference_load_factor,
                    lf_constant_mw: result.lf_constant_mw,
                    final_scale: result.final_scale,
                }
            })
            .collect(),
    };
    let json = serde_json::to_string_pretty(&meta)?;
    write_atomic(&args.out.join("meta.json"), json.as_bytes())?;

    println!(
        "synthesized {} buses (seed {}) -> {}",
        synthesis.results.len(),
        config.master_seed,
        args.out.display()
    );
    Ok(())
}
