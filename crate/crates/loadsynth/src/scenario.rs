//! Behind-the-meter solar "duck curve" scenario construction.
//!
//! A system-wide BTM solar capacity is split across buses by a weighted
//! potential (non-industrial load size and local solar resource), a
//! triangular daily output profile is drawn per bus, and the day's
//! benchmark load is netted against it.

use crate::error::{Error, Result};
use crate::rng::substream_rng;
use crate::series::HourlySeries;
use crate::types::{CompositionRatio, GeoPoint};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Average daily solar output at one location, in kWh/m^2/day.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolarResourceRecord {
    pub location: GeoPoint,
    pub avg_output: f64,
}

impl SolarResourceRecord {
    pub fn new(location: GeoPoint, avg_output: f64) -> Result<Self> {
        if !(avg_output.is_finite() && avg_output >= 0.0) {
            return Err(Error::input(format!(
                "solar resource must be non-negative, got {avg_output}"
            )));
        }
        Ok(Self {
            location,
            avg_output,
        })
    }
}

/// Scenario parameters. Weights must be non-negative and sum to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct DuckCurveConfig {
    /// Total BTM solar capacity to distribute, MW.
    pub system_btm_capacity_mw: f64,
    /// Weight on normalized non-industrial load size.
    pub weight_load: f64,
    /// Weight on normalized solar resource.
    pub weight_solar: f64,
    /// Day of year to alter, 0..=364.
    pub day_index: usize,
    pub seed: u64,
}

impl Default for DuckCurveConfig {
    fn default() -> Self {
        Self {
            system_btm_capacity_mw: 30_000.0,
            weight_load: 0.5,
            weight_solar: 0.5,
            day_index: 140, // late spring
            seed: 0,
        }
    }
}

impl DuckCurveConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.system_btm_capacity_mw.is_finite() && self.system_btm_capacity_mw >= 0.0) {
            return Err(Error::input(format!(
                "system BTM capacity must be non-negative, got {}",
                self.system_btm_capacity_mw
            )));
        }
        if self.weight_load < 0.0 || self.weight_solar < 0.0 {
            return Err(Error::input("potential weights must be non-negative"));
        }
        if (self.weight_load + self.weight_solar - 1.0).abs() > 1e-9 {
            return Err(Error::input(format!(
                "potential weights must sum to 1, got {}",
                self.weight_load + self.weight_solar
            )));
        }
        if self.day_index >= 365 {
            return Err(Error::input(format!(
                "day_index {} outside [0, 364]",
                self.day_index
            )));
        }
        Ok(())
    }
}

/// Weighted, normalized solar potential of one bus, in [0, 1].
pub fn btm_potential(
    bus_nonind_load_mw: f64,
    max_nonind_load_mw: f64,
    solar_resource: f64,
    max_solar_resource: f64,
    weight_load: f64,
    weight_solar: f64,
) -> Result<f64> {
    if max_nonind_load_mw <= 0.0 {
        return Err(Error::input("maximum non-industrial load must be positive"));
    }
    if max_solar_resource <= 0.0 {
        return Err(Error::input("maximum solar resource must be positive"));
    }
    Ok(weight_load * (bus_nonind_load_mw / max_nonind_load_mw)
        + weight_solar * (solar_resource / max_solar_resource))
}

/// Split the system capacity across buses in proportion to potential.
/// The allocations sum to the system capacity exactly (up to rounding).
pub fn allocate_btm_capacity(potentials: &[f64], system_capacity_mw: f64) -> Result<Vec<f64>> {
    let total: f64 = potentials.iter().sum();
    if total <= 0.0 {
        return Err(Error::input("all BTM potentials are zero"));
    }
    Ok(potentials
        .iter()
        .map(|p| system_capacity_mw * p / total)
        .collect())
}

/// One bus's daily BTM solar output: zero outside [start, end], peak
/// value equal to the capacity at the peak hour, linear ramps between.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BtmProfile {
    pub start_hour: usize,
    pub peak_hour: usize,
    pub end_hour: usize,
    pub output_mw: [f64; 24],
}

/// Draw anchor hours (start in 6..=8, peak in 13..=15, end in 18..=20)
/// and build the piecewise-linear output profile.
pub fn btm_solar_profile<R: Rng>(capacity_mw: f64, rng: &mut R) -> Result<BtmProfile> {
    if !(capacity_mw.is_finite() && capacity_mw >= 0.0) {
        return Err(Error::input(format!(
            "BTM capacity must be non-negative, got {capacity_mw}"
        )));
    }
    let start_hour = rng.gen_range(6..=8usize);
    let peak_hour = rng.gen_range(13..=15usize);
    let end_hour = rng.gen_range(18..=20usize);
    let mut output_mw = [0.0; 24];
    for (h, out) in output_mw.iter_mut().enumerate() {
        // Fraction first, so the peak hour lands on the capacity exactly.
        *out = if h < start_hour || h > end_hour {
            0.0
        } else if h <= peak_hour {
            let ramp = (h - start_hour) as f64 / (peak_hour - start_hour) as f64;
            capacity_mw * ramp
        } else {
            let ramp = (end_hour - h) as f64 / (end_hour - peak_hour) as f64;
            capacity_mw * ramp
        };
    }
    Ok(BtmProfile {
        start_hour,
        peak_hour,
        end_hour,
        output_mw,
    })
}

/// Static bus facts the scenario needs, typically taken from synthesis
/// metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioBus {
    pub bus_id: u64,
    pub location: GeoPoint,
    pub peak_mw: f64,
    pub ratio: CompositionRatio,
}

/// Per-bus outcome of the duck-curve construction.
#[derive(Debug, Clone, PartialEq)]
pub struct BusDuckCurve {
    pub bus_id: u64,
    pub btm_capacity_mw: f64,
    pub profile: BtmProfile,
    pub benchmark_mw: [f64; 24],
    pub net_mw: [f64; 24],
}

#[derive(Debug, Clone, PartialEq)]
pub struct DuckCurveScenario {
    pub buses: Vec<BusDuckCurve>,
    pub system_benchmark_mw: [f64; 24],
    pub system_net_mw: [f64; 24],
}

/// Build the scenario: allocate capacity by weighted potential, draw a
/// per-bus daily profile, and subtract it from the benchmark day
/// (clamping net load at zero).
///
/// `buses` and `benchmarks` must be index-aligned. Deterministic for a
/// fixed config: every bus draws from its own seed substream.
pub fn apply_duck_curve(
    buses: &[ScenarioBus],
    benchmarks: &[HourlySeries],
    solar: &[SolarResourceRecord],
    config: &DuckCurveConfig,
) -> Result<DuckCurveScenario> {
    config.validate()?;
    if buses.is_empty() {
        return Err(Error::input("scenario needs at least one bus"));
    }
    if buses.len() != benchmarks.len() {
        return Err(Error::input(format!(
            "{} buses but {} benchmark series",
            buses.len(),
            benchmarks.len()
        )));
    }
    if solar.is_empty() {
        return Err(Error::input("scenario needs at least one solar resource record"));
    }

    // Nearest solar resource per bus.
    let bus_solar: Vec<f64> = buses
        .iter()
        .map(|b| {
            solar
                .iter()
                .enumerate()
                .min_by(|(_, x), (_, y)| {
                    let dx = b.location.distance_km(&x.location);
                    let dy = b.location.distance_km(&y.location);
                    dx.partial_cmp(&dy).expect("distances are finite")
                })
                .map(|(_, rec)| rec.avg_output)
                .expect("non-empty solar list")
        })
        .collect();

    let nonind: Vec<f64> = buses
        .iter()
        .map(|b| b.peak_mw * (b.ratio.residential + b.ratio.commercial))
        .collect();
    let max_nonind = nonind.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let max_solar = bus_solar.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let potentials: Vec<f64> = nonind
        .iter()
        .zip(&bus_solar)
        .map(|(&load, &res)| {
            btm_potential(
                load,
                max_nonind,
                res,
                max_solar,
                config.weight_load,
                config.weight_solar,
            )
        })
        .collect::<Result<_>>()?;
    let capacities = allocate_btm_capacity(&potentials, config.system_btm_capacity_mw)?;

    let day_start = config.day_index * 24;
    let mut system_benchmark = [0.0; 24];
    let mut system_net = [0.0; 24];
    let mut out = Vec::with_capacity(buses.len());
    for ((bus, benchmark), capacity) in buses.iter().zip(benchmarks).zip(&capacities) {
        let mut rng = substream_rng(config.seed, bus.bus_id);
        let profile = btm_solar_profile(*capacity, &mut rng)?;
        let day = &benchmark.values()[day_start..day_start + 24];
        let mut benchmark_mw = [0.0; 24];
        let mut net_mw = [0.0; 24];
        for h in 0..24 {
            benchmark_mw[h] = day[h];
            net_mw[h] = (day[h] - profile.output_mw[h]).max(0.0);
            system_benchmark[h] += benchmark_mw[h];
            system_net[h] += net_mw[h];
        }
        out.push(BusDuckCurve {
            bus_id: bus.bus_id,
            btm_capacity_mw: *capacity,
            profile,
            benchmark_mw,
            net_mw,
        });
    }

    Ok(DuckCurveScenario {
        buses: out,
        system_benchmark_mw: system_benchmark,
        system_net_mw: system_net,
    })
}
