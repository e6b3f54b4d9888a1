//! Per-bus candidate pools of prototype profiles and the yearly
//! industrial synthesis from daily sector curves.

use crate::error::{Error, Result};
use crate::ingest::{DailySectorCurve, IndustrialFacilityRecord, ProfileKind, PrototypeProfile};
use crate::series::{HourlySeries, HOURS_PER_YEAR};
use crate::types::LoadBus;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use std::collections::HashMap;

/// Multiplicative white-noise level for industrial yearly synthesis.
pub const INDUSTRIAL_NOISE_SIGMA: f64 = 0.02;

const DAYS_PER_YEAR: usize = 365;

/// Number of nearest prototype locations pooled per bus.
pub const POOL_LOCATIONS: usize = 5;

/// Profiles of `kind` at the `POOL_LOCATIONS` nearest distinct locations
/// to the bus (all of them when the corpus has fewer). Ordered by
/// (distance, profile_id).
fn location_pool<'a>(
    bus: &LoadBus,
    corpus: &'a [PrototypeProfile],
    kind: ProfileKind,
) -> Result<Vec<&'a PrototypeProfile>> {
    let mut candidates: Vec<(&PrototypeProfile, f64)> = corpus
        .iter()
        .filter(|p| p.kind == kind)
        .map(|p| (p, bus.location.distance_km(&p.location)))
        .collect();
    if candidates.is_empty() {
        return Err(Error::input(format!(
            "corpus has no {kind} profiles for bus {}",
            bus.bus_id
        )));
    }
    candidates.sort_by(|(a, da), (b, db)| {
        da.partial_cmp(db)
            .expect("distances are finite")
            .then_with(|| a.profile_id.cmp(&b.profile_id))
    });

    // Walk in sorted order, admitting profiles until five distinct
    // locations have been seen.
    let mut admitted: Vec<(u64, u64)> = Vec::new();
    let mut pool = Vec::new();
    for (p, _) in candidates {
        let key = p.location.ord_key();
        if !admitted.contains(&key) {
            if admitted.len() == POOL_LOCATIONS {
                continue;
            }
            admitted.push(key);
        }
        pool.push(p);
    }
    Ok(pool)
}

/// Residential profiles at the nearest locations to the bus.
pub fn residential_pool<'a>(
    bus: &LoadBus,
    corpus: &'a [PrototypeProfile],
) -> Result<Vec<&'a PrototypeProfile>> {
    location_pool(bus, corpus, ProfileKind::Residential)
}

/// Commercial profiles (all building subtypes) at the nearest locations
/// to the bus, up to 5 locations x 16 subtypes. Logs a warning when a
/// pooled location is missing subtypes relative to its peers.
pub fn commercial_pool<'a>(
    bus: &LoadBus,
    corpus: &'a [PrototypeProfile],
) -> Result<Vec<&'a PrototypeProfile>> {
    let pool = location_pool(bus, corpus, ProfileKind::Commercial)?;
    let mut per_location: HashMap<(u64, u64), usize> = HashMap::new();
    for p in &pool {
        *per_location.entry(p.location.ord_key()).or_default() += 1;
    }
    if let (Some(min), Some(max)) = (per_location.values().min(), per_location.values().max()) {
        if min != max {
            log::warn!(
                "bus {}: commercial pool locations carry {min}..{max} subtypes",
                bus.bus_id
            );
        }
    }
    Ok(pool)
}

/// Industrial profiles whose peak is below the bus's industrial component
/// target. When none qualify (and the target is positive) the single
/// smallest-peak profile is returned so aggregation can proceed.
pub fn industrial_pool(
    target_peak_mw: f64,
    facility_profiles: &[PrototypeProfile],
) -> Result<Vec<&PrototypeProfile>> {
    if !(target_peak_mw.is_finite() && target_peak_mw >= 0.0) {
        return Err(Error::input(format!(
            "industrial target peak must be non-negative, got {target_peak_mw}"
        )));
    }
    if target_peak_mw == 0.0 {
        return Ok(Vec::new());
    }
    if facility_profiles.is_empty() {
        return Err(Error::input(
            "industrial corpus is empty but the industrial target is positive",
        ));
    }
    let mut pool: Vec<&PrototypeProfile> = facility_profiles
        .iter()
        .filter(|p| p.series.max() < target_peak_mw)
        .collect();
    if pool.is_empty() {
        let smallest = facility_profiles
            .iter()
            .min_by(|a, b| {
                a.series
                    .max()
                    .partial_cmp(&b.series.max())
                    .expect("maxima are finite")
                    .then_with(|| a.profile_id.cmp(&b.profile_id))
            })
            .expect("non-empty corpus");
        return Ok(vec![smallest]);
    }
    pool.sort_by(|a, b| a.profile_id.cmp(&b.profile_id));
    Ok(pool)
}

/// Pre-noise yearly template: the daily curve tiled over
/// `operating_days` consecutive days starting at `start_day` (wrapping),
/// idle days held at the curve minimum.
pub fn industrial_year_template(
    curve: &DailySectorCurve,
    operating_days: usize,
    start_day: usize,
) -> Vec<f64> {
    let standby = curve.min();
    let mut values = vec![standby; HOURS_PER_YEAR];
    for d in 0..operating_days.min(DAYS_PER_YEAR) {
        let day = (start_day + d) % DAYS_PER_YEAR;
        values[day * 24..(day + 1) * 24].copy_from_slice(&curve.per_unit_values);
    }
    values
}

/// Expand a facility record into a yearly series: operating days from the
/// annual operating hours, random start day, small multiplicative white
/// noise, and a final rescale so the series integrates to the facility's
/// annual energy.
pub fn synthesize_industrial_year(
    record: &IndustrialFacilityRecord,
    curve: &DailySectorCurve,
    seed: u64,
) -> Result<PrototypeProfile> {
    if record.sector_code != curve.sector_code {
        return Err(Error::input(format!(
            "facility {} has sector {}, curve has sector {}",
            record.facility_id, record.sector_code, curve.sector_code
        )));
    }
    if record.annual_energy_mwh <= 0.0 {
        return Err(Error::input(format!(
            "facility {}: annual energy must be positive",
            record.facility_id
        )));
    }

    let operating_days =
        ((record.annual_operating_hours / 24.0).round() as usize).clamp(1, DAYS_PER_YEAR);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start_day = rng.gen_range(0..DAYS_PER_YEAR);

    let mut values = industrial_year_template(curve, operating_days, start_day);
    let noise = Normal::new(0.0, INDUSTRIAL_NOISE_SIGMA).expect("valid sigma");
    for v in &mut values {
        *v = (*v * (1.0 + noise.sample(&mut rng))).max(0.0);
    }

    let sum: f64 = values.iter().sum();
    if sum <= 0.0 {
        return Err(Error::input(format!(
            "facility {}: degenerate all-zero yearly curve",
            record.facility_id
        )));
    }
    let scale = record.annual_energy_mwh / sum;
    for v in &mut values {
        *v *= scale;
    }

    let series = HourlySeries::new(record.facility_id.clone(), values)?;
    PrototypeProfile::new(
        record.facility_id.clone(),
        ProfileKind::Industrial,
        record.sector_code.clone(),
        crate::types::GeoPoint { lat: 0.0, lon: 0.0 },
        "",
        series,
    )
}
