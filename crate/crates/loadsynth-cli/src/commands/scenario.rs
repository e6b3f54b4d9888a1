//! `scenario`: construct the BTM-solar duck-curve scenario from a
//! benchmark series file and its synthesis metadata.

use crate::commands::SynthMetadata;
use crate::output::{read_to_string, write_atomic};
use anyhow::{bail, Context, Result};
use clap::Args;
use loadsynth::ingest::{
    parse_series_long, parse_solar_table, write_allocation_table, write_hour_blocks,
    write_system_day_table,
};
use loadsynth::scenario::{apply_duck_curve, DuckCurveConfig, ScenarioBus};
use loadsynth::types::GeoPoint;
use std::path::PathBuf;

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    /// Benchmark long-format series CSV from `synth`.
    #[arg(long)]
    pub series: PathBuf,

    /// Synthesis metadata JSON from `synth` (bus locations and ratios).
    #[arg(long)]
    pub meta: PathBuf,

    /// Solar resource CSV (lat,lon,avg_kwh_m2_day).
    #[arg(long)]
    pub solar: PathBuf,

    /// Scenario config JSON; flags win on conflict.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Scenario seed; overrides the seed in --config.
    #[arg(long)]
    pub seed: Option<u64>,

    /// Output directory (net_load.csv, system.csv, allocation.csv).
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(args: &ScenarioArgs) -> Result<()> {
    let mut config: DuckCurveConfig = match &args.config {
        Some(path) => serde_json::from_str(&read_to_string(path)?)
            .with_context(|| format!("parsing {}", path.display()))?,
        None => DuckCurveConfig::default(),
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }

    let meta: SynthMetadata = serde_json::from_str(&read_to_string(&args.meta)?)
        .with_context(|| format!("parsing {}", args.meta.display()))?;
    let series = parse_series_long(&read_to_string(&args.series)?)?;
    let solar = parse_solar_table(&read_to_string(&args.solar)?)?;

    let mut buses = Vec::with_capacity(meta.buses.len());
    let mut benchmarks = Vec::with_capacity(meta.buses.len());
    for bus_meta in &meta.buses {
        let (_, benchmark) = series
            .iter()
            .find(|(id, _)| *id == bus_meta.bus_id)
            .with_context(|| {
                format!(
                    "bus {} from {} is missing in {}",
                    bus_meta.bus_id,
                    args.meta.display(),
                    args.series.display()
                )
            })?;
        buses.push(ScenarioBus {
            bus_id: bus_meta.bus_id,
            location: GeoPoint::new(bus_meta.lat, bus_meta.lon)?,
            peak_mw: bus_meta.peak_mw,
            ratio: bus_meta.ratio,
        });
        benchmarks.push(benchmark.clone());
    }
    if buses.is_empty() {
        bail!("metadata {} lists no buses", args.meta.display());
    }

    let scenario = apply_duck_curve(&buses, &benchmarks, &solar, &config)?;

    let allocations: Vec<(u64, f64)> = scenario
        .buses
        .iter()
        .map(|b| (b.bus_id, b.btm_capacity_mw))
        .collect();
    let mut buf = Vec::new();
    write_allocation_table(&allocations, &mut buf)?;
    write_atomic(&args.out.join("allocation.csv"), &buf)?;

    let mut buf = Vec::new();
    write_hour_blocks(
        scenario
            .buses
            .iter()
            .map(|b| (b.bus_id, b.net_mw.as_slice())),
        &mut buf,
    )?;
    write_atomic(&args.out.join("net_load.csv"), &buf)?;

    let rows: Vec<(usize, f64, f64)> = (0..24)
        .map(|h| (h, scenario.system_benchmark_mw[h], scenario.system_net_mw[h]))
        .collect();
    let mut buf = Vec::new();
    write_system_day_table(&rows, &mut buf)?;
    write_atomic(&args.out.join("system.csv"), &buf)?;

    let total: f64 = allocations.iter().map(|(_, c)| c).sum();
    println!(
        "duck curve: {} buses, {total:.1} MW BTM capacity, day {} -> {}",
        scenario.buses.len(),
        config.day_index,
        args.out.display()
    );
    Ok(())
}
