//! Statistical validation metrics and reference-band checks: monthly
//! load factors, the mean-normalized load distribution curve, and the
//! autocorrelation function.

use crate::error::{Error, Result};
use crate::series::{HourlySeries, HOURS_PER_YEAR};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::Write;

/// Default distribution-curve bin width in per-unit-of-mean load.
pub const DEFAULT_BIN_WIDTH_PU: f64 = 0.05;

/// Distribution-curve domain upper edge, per unit of mean.
pub const DISTRIBUTION_MAX_PU: f64 = 3.0;

/// Default autocorrelation depth.
pub const DEFAULT_MAX_LAG: usize = 48;

/// Days per month of the non-leap modeling year.
pub const MONTH_DAYS: [usize; 12] = [31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31];

/// Half-open hour ranges of the twelve months; they partition the year.
pub fn month_hour_bounds() -> [(usize, usize); 12] {
    let mut bounds = [(0, 0); 12];
    let mut start = 0;
    for (m, days) in MONTH_DAYS.iter().enumerate() {
        let end = start + days * 24;
        bounds[m] = (start, end);
        start = end;
    }
    bounds
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    MonthlyLoadFactor,
    DistributionCurve,
    Autocorrelation,
}

impl MetricKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            MetricKind::MonthlyLoadFactor => "monthly_load_factor",
            MetricKind::DistributionCurve => "distribution_curve",
            MetricKind::Autocorrelation => "autocorrelation",
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Load factor of each calendar month.
pub fn monthly_load_factors(series: &HourlySeries) -> Result<[f64; 12]> {
    let mut out = [0.0; 12];
    for (m, (start, end)) in month_hour_bounds().into_iter().enumerate() {
        let month = &series.values()[start..end];
        let max = month.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if max <= 0.0 {
            return Err(Error::DegenerateSeries(format!(
                "{}: month {} is all zero",
                series.label(),
                m + 1
            )));
        }
        let mean = month.iter().sum::<f64>() / month.len() as f64;
        out[m] = mean / max;
    }
    Ok(out)
}

/// Histogram of time spent at each load level, the series normalized by
/// its own mean. Bins cover [0, 3] p.u.; anything above lands in the
/// terminal bin. Fractions sum to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionCurve {
    pub bin_width_pu: f64,
    pub centers: Vec<f64>,
    pub fractions: Vec<f64>,
}

pub fn distribution_curve(series: &HourlySeries, bin_width_pu: f64) -> Result<DistributionCurve> {
    if !(bin_width_pu.is_finite() && bin_width_pu > 0.0) {
        return Err(Error::input(format!(
            "bin width must be positive, got {bin_width_pu}"
        )));
    }
    let mean = series.mean();
    if mean <= 0.0 {
        return Err(Error::DegenerateSeries(series.label().to_string()));
    }
    // Tolerate widths like 0.075 - 0.025 that only nearly divide the domain.
    let ratio = DISTRIBUTION_MAX_PU / bin_width_pu;
    let n_bins = if (ratio - ratio.round()).abs() < 1e-6 {
        ratio.round() as usize
    } else {
        ratio.ceil() as usize
    };
    let mut counts = vec![0usize; n_bins];
    for v in series.values() {
        let pu = v / mean;
        let idx = ((pu / bin_width_pu) as usize).min(n_bins - 1);
        counts[idx] += 1;
    }
    let total = HOURS_PER_YEAR as f64;
    Ok(DistributionCurve {
        bin_width_pu,
        centers: (0..n_bins)
            .map(|i| (i as f64 + 0.5) * bin_width_pu)
            .collect(),
        fractions: counts.into_iter().map(|c| c as f64 / total).collect(),
    })
}

/// Biased sample autocorrelation for lags `0..=max_lag`:
/// `r(k) = sum_t (x_t - m)(x_{t+k} - m) / sum_t (x_t - m)^2`, `r(0) = 1`.
pub fn autocorrelation(series: &HourlySeries, max_lag: usize) -> Result<Vec<f64>> {
    if max_lag >= HOURS_PER_YEAR {
        return Err(Error::input(format!(
            "max lag {max_lag} must be below {HOURS_PER_YEAR}"
        )));
    }
    let mean = series.mean();
    let centered: Vec<f64> = series.values().iter().map(|v| v - mean).collect();
    let denominator: f64 = centered.iter().map(|d| d * d).sum();
    if denominator <= 0.0 {
        return Err(Error::input(format!(
            "{}: zero variance, autocorrelation undefined",
            series.label()
        )));
    }
    let mut out = Vec::with_capacity(max_lag + 1);
    for lag in 0..=max_lag {
        let numerator: f64 = centered[..HOURS_PER_YEAR - lag]
            .iter()
            .zip(&centered[lag..])
            .map(|(a, b)| a * b)
            .sum();
        out.push(numerator / denominator);
    }
    Ok(out)
}

/// A per-metric reference band: pointwise closed [lower, upper] envelope
/// over a strictly increasing axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceBand {
    pub metric: MetricKind,
    pub axis: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl ReferenceBand {
    pub fn new(metric: MetricKind, axis: Vec<f64>, lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if axis.is_empty() {
            return Err(Error::input(format!("{metric} band: empty axis")));
        }
        if axis.len() != lower.len() || axis.len() != upper.len() {
            return Err(Error::input(format!(
                "{metric} band: axis/lower/upper lengths differ"
            )));
        }
        if axis.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::input(format!(
                "{metric} band: axis must be strictly increasing"
            )));
        }
        if lower.iter().zip(&upper).any(|(l, u)| l > u) {
            return Err(Error::input(format!(
                "{metric} band: lower exceeds upper"
            )));
        }
        Ok(Self {
            metric,
            axis,
            lower,
            upper,
        })
    }
}

/// Pointwise verdicts of one metric against one band.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandCheck {
    pub inside: Vec<bool>,
    pub pass_fraction: f64,
}

/// Check values (on `axis`) against a band. The axes must agree point
/// for point.
pub fn band_check(axis: &[f64], values: &[f64], band: &ReferenceBand) -> Result<BandCheck> {
    if axis.len() != values.len() {
        return Err(Error::input("axis mismatch: value count differs from axis"));
    }
    if axis.len() != band.axis.len() {
        return Err(Error::input(format!(
            "axis mismatch: {} values against a {}-point band",
            axis.len(),
            band.axis.len()
        )));
    }
    if axis
        .iter()
        .zip(&band.axis)
        .any(|(a, b)| (a - b).abs() > 1e-9)
    {
        return Err(Error::input("axis mismatch: axis points differ"));
    }
    let inside: Vec<bool> = values
        .iter()
        .zip(band.lower.iter().zip(&band.upper))
        .map(|(v, (l, u))| *v >= *l && *v <= *u)
        .collect();
    let pass_fraction = inside.iter().filter(|b| **b).count() as f64 / inside.len() as f64;
    Ok(BandCheck {
        inside,
        pass_fraction,
    })
}

// ---------------------------------------------------------------------------
// Band files and reports
// ---------------------------------------------------------------------------

const BAND_HEADER: [&str; 3] = ["axis", "lower", "upper"];

pub fn parse_band_csv(text: &str, metric: MetricKind) -> Result<ReferenceBand> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers: Vec<&str> = reader.headers()?.iter().collect();
    if headers != BAND_HEADER {
        return Err(Error::parse(
            Some("band file"),
            Some(1),
            format!("bad header: expected \"axis,lower,upper\", got \"{}\"", headers.join(",")),
        ));
    }
    let mut axis = Vec::new();
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::parse(Some("band file"), None, e.to_string()))?;
        let line = rec.position().map(|p| p.line() as usize);
        let (a, l, u): (f64, f64, f64) = rec
            .deserialize(None)
            .map_err(|e| Error::parse(Some("band file"), line, e.to_string()))?;
        axis.push(a);
        lower.push(l);
        upper.push(u);
    }
    ReferenceBand::new(metric, axis, lower, upper)
}

pub fn write_band_csv<W: Write>(band: &ReferenceBand, w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(BAND_HEADER)?;
    for i in 0..band.axis.len() {
        out.serialize((band.axis[i], band.lower[i], band.upper[i]))?;
    }
    out.flush()?;
    Ok(())
}

const METRIC_HEADER: [&str; 4] = ["axis", "value", "lower", "upper"];

/// Plot-ready metric CSV: computed values next to the band envelope.
pub fn write_metric_csv<W: Write>(report: &MetricReport, w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(METRIC_HEADER)?;
    for i in 0..report.axis.len() {
        out.serialize((
            report.axis[i],
            report.values[i],
            report.lower[i],
            report.upper[i],
        ))?;
    }
    out.flush()?;
    Ok(())
}

pub fn parse_metric_csv(text: &str) -> Result<Vec<(f64, f64, f64, f64)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers: Vec<&str> = reader.headers()?.iter().collect();
    if headers != METRIC_HEADER {
        return Err(Error::parse(
            Some("metric file"),
            Some(1),
            format!("bad header: got \"{}\"", headers.join(",")),
        ));
    }
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::parse(Some("metric file"), None, e.to_string()))?;
        let line = rec.position().map(|p| p.line() as usize);
        let row: (f64, f64, f64, f64) = rec
            .deserialize(None)
            .map_err(|e| Error::parse(Some("metric file"), line, e.to_string()))?;
        out.push(row);
    }
    Ok(out)
}

/// One metric's computed values with its band verdict. A metric that
/// cannot be computed for the series (e.g. autocorrelation of a constant
/// series) carries its error message and empty arrays instead.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub metric: MetricKind,
    pub axis: Vec<f64>,
    pub values: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub inside: Vec<bool>,
    pub pass_fraction: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// All metric reports for one series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub series_label: String,
    pub metrics: Vec<MetricReport>,
}

impl ValidationReport {
    pub fn metric(&self, kind: MetricKind) -> Option<&MetricReport> {
        self.metrics.iter().find(|m| m.metric == kind)
    }
}

/// Run every metric named by `bands` against one series. Band axes fix
/// the metric parameters: bin width from the distribution band spacing,
/// autocorrelation depth from the last lag in its band.
///
/// A metric that is undefined for this series (degenerate input) is
/// recorded in its report entry; an axis mismatch against a band is a
/// configuration problem and fails the whole call.
pub fn validate_series(series: &HourlySeries, bands: &[ReferenceBand]) -> Result<ValidationReport> {
    let mut metrics = Vec::with_capacity(bands.len());
    for band in bands {
        let computed: Result<(Vec<f64>, Vec<f64>)> = match band.metric {
            MetricKind::MonthlyLoadFactor => monthly_load_factors(series)
                .map(|values| ((1..=12).map(|m| m as f64).collect(), values.to_vec())),
            MetricKind::DistributionCurve => {
                let width = if band.axis.len() >= 2 {
                    band.axis[1] - band.axis[0]
                } else {
                    DEFAULT_BIN_WIDTH_PU
                };
                distribution_curve(series, width).map(|curve| (curve.centers, curve.fractions))
            }
            MetricKind::Autocorrelation => {
                let max_lag = band.axis.last().map(|l| *l as usize).unwrap_or(DEFAULT_MAX_LAG);
                autocorrelation(series, max_lag)
                    .map(|values| ((0..=max_lag).map(|l| l as f64).collect(), values))
            }
        };
        match computed {
            Ok((axis, values)) => {
                let check = band_check(&axis, &values, band)?;
                metrics.push(MetricReport {
                    metric: band.metric,
                    axis,
                    values,
                    lower: band.lower.clone(),
                    upper: band.upper.clone(),
                    inside: check.inside,
                    pass_fraction: check.pass_fraction,
                    error: None,
                });
            }
            Err(e) => metrics.push(MetricReport {
                metric: band.metric,
                axis: Vec::new(),
                values: Vec::new(),
                lower: Vec::new(),
                upper: Vec::new(),
                inside: Vec::new(),
                pass_fraction: 0.0,
                error: Some(e.to_string()),
            }),
        }
    }
    Ok(ValidationReport {
        series_label: series.label().to_string(),
        metrics,
    })
}

/// Qualitative default bands shipped with the repository.
pub mod default_bands {
    use super::{parse_band_csv, MetricKind, ReferenceBand};
    use crate::error::Result;

    pub const MONTHLY_LOAD_FACTOR_CSV: &str =
        include_str!("../data/bands/monthly_load_factor.csv");
    pub const DISTRIBUTION_CURVE_CSV: &str =
        include_str!("../data/bands/distribution_curve.csv");
    pub const AUTOCORRELATION_CSV: &str = include_str!("../data/bands/autocorrelation.csv");

    pub fn all() -> Result<Vec<ReferenceBand>> {
        Ok(vec![
            parse_band_csv(MONTHLY_LOAD_FACTOR_CSV, MetricKind::MonthlyLoadFactor)?,
            parse_band_csv(DISTRIBUTION_CURVE_CSV, MetricKind::DistributionCurve)?,
            parse_band_csv(AUTOCORRELATION_CSV, MetricKind::Autocorrelation)?,
        ])
    }
}
