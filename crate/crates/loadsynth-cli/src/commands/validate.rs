//! `validate`: metric suite plus band checks over a synthesized series
//! file. Validates the system-level sum by default; `--per-bus` adds a
//! report per bus.

use crate::output::{read_to_string, write_atomic};
use anyhow::{Context, Result};
use clap::Args;
use loadsynth::ingest::parse_series_long;
use loadsynth::series::sum_series;
use loadsynth::validation::{
    default_bands, parse_band_csv, validate_series, write_metric_csv, MetricKind, ReferenceBand,
    ValidationReport,
};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Long-format series CSV (bus_id,hour,p_mw).
    #[arg(long)]
    pub series: PathBuf,

    /// Directory of band CSVs (monthly_load_factor.csv,
    /// distribution_curve.csv, autocorrelation.csv). Defaults to the
    /// qualitative bands shipped with the library.
    #[arg(long)]
    pub bands: Option<PathBuf>,

    /// Also validate each bus series individually.
    #[arg(long)]
    pub per_bus: bool,

    /// Output directory (report.json plus one plot-ready CSV per metric).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FullReport {
    pub system: ValidationReport,
    pub buses: Vec<ValidationReport>,
}

fn load_bands(dir: Option<&Path>) -> Result<Vec<ReferenceBand>> {
    match dir {
        None => Ok(default_bands::all()?),
        Some(dir) => {
            let mut bands = Vec::new();
            for metric in [
                MetricKind::MonthlyLoadFactor,
                MetricKind::DistributionCurve,
                MetricKind::Autocorrelation,
            ] {
                let path = dir.join(format!("{metric}.csv"));
                let text = read_to_string(&path)?;
                bands.push(
                    parse_band_csv(&text, metric)
                        .with_context(|| format!("parsing {}", path.display()))?,
                );
            }
            Ok(bands)
        }
    }
}

pub fn run(args: &ValidateArgs) -> Result<()> {
    let bands = load_bands(args.bands.as_deref())?;
    let series = parse_series_long(&read_to_string(&args.series)?)?;
    if series.is_empty() {
        anyhow::bail!("series file {} holds no buses", args.series.display());
    }

    let refs: Vec<&loadsynth::HourlySeries> = series.iter().map(|(_, s)| s).collect();
    let system = sum_series("system", &refs)?;
    let system_report = validate_series(&system, &bands)?;

    for metric_report in &system_report.metrics {
        if metric_report.error.is_some() {
            continue;
        }
        let mut buf = Vec::new();
        write_metric_csv(metric_report, &mut buf)?;
        write_atomic(
            &args.out.join(format!("{}.csv", metric_report.metric)),
            &buf,
        )?;
    }

    let mut bus_reports = Vec::new();
    if args.per_bus {
        for (_, s) in &series {
            bus_reports.push(validate_series(s, &bands)?);
        }
    }

    for report in std::iter::once(&system_report).chain(&bus_reports) {
        for metric in &report.metrics {
            match &metric.error {
                Some(err) => println!(
                    "{:<12} {:<22} not computable: {err}",
                    report.series_label, metric.metric
                ),
                None => println!(
                    "{:<12} {:<22} pass fraction {:.3}",
                    report.series_label, metric.metric, metric.pass_fraction
                ),
            }
        }
    }

    let full = FullReport {
        system: system_report,
        buses: bus_reports,
    };
    let json = serde_json::to_string_pretty(&full)?;
    write_atomic(&args.out.join("report.json"), json.as_bytes())?;
    Ok(())
}
