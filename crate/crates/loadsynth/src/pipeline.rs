//! Full-system synthesis: composition, pooling, and per-bus aggregation
//! wired together, parallel over buses.

use crate::aggregation::{build_bus_series, AggregationConfig, BusSynthesisResult, ComponentPools};
use crate::composition::{assign_utility, composition_ratio};
use crate::error::{Error, Result};
use crate::ingest::{
    DailySectorCurve, IndustrialFacilityRecord, ProfileKind, PrototypeProfile, UtilitySalesRecord,
};
use crate::prototypes::{commercial_pool, industrial_pool, residential_pool, synthesize_industrial_year};
use crate::rng::{stream_id_named, substream_seed};
use crate::series::{sum_series, HourlySeries};
use crate::types::{CompositionRatio, LoadBus};
use rayon::prelude::*;

/// Everything the synthesis needs, borrowed from the caller.
pub struct SynthesisInputs<'a> {
    pub buses: &'a [LoadBus],
    /// Residential, commercial, and feeder prototypes.
    pub corpus: &'a [PrototypeProfile],
    pub facilities: &'a [IndustrialFacilityRecord],
    pub sector_curves: &'a [DailySectorCurve],
    pub utilities: &'a [UtilitySalesRecord],
    pub config: AggregationConfig,
}

/// How one bus was classified before aggregation.
#[derive(Debug, Clone, PartialEq)]
pub struct BusAssignment {
    pub bus_id: u64,
    pub utility_id: String,
    pub region: String,
    pub ratio: CompositionRatio,
}

/// Results for every bus, in bus-id order.
pub struct SystemSynthesis {
    pub results: Vec<BusSynthesisResult>,
    pub assignments: Vec<BusAssignment>,
}

impl SystemSynthesis {
    /// Pointwise sum of all bus series.
    pub fn system_series(&self) -> Result<HourlySeries> {
        let refs: Vec<&HourlySeries> = self.results.iter().map(|r| &r.series).collect();
        sum_series("system", &refs)
    }
}

/// Expand every facility record into a yearly industrial prototype.
/// Facility seeds derive from (master seed, facility id), so the set is
/// stable under reordering.
pub fn synthesize_industrial_corpus(
    facilities: &[IndustrialFacilityRecord],
    curves: &[DailySectorCurve],
    master_seed: u64,
) -> Result<Vec<PrototypeProfile>> {
    facilities
        .iter()
        .map(|record| {
            let curve = curves
                .iter()
                .find(|c| c.sector_code == record.sector_code)
                .ok_or_else(|| {
                    Error::input(format!(
                        "facility {}: no daily curve for sector {}",
                        record.facility_id, record.sector_code
                    ))
                })?;
            let seed = substream_seed(
                master_seed,
                stream_id_named("industrial_facility", &record.facility_id),
            );
            synthesize_industrial_year(record, curve, seed)
        })
        .collect()
}

/// The region a bus belongs to: the region tag of the geographically
/// nearest feeder profile (ties broken by profile id).
pub fn bus_region<'a>(bus: &LoadBus, feeders: &[&'a PrototypeProfile]) -> Result<&'a str> {
    feeders
        .iter()
        .min_by(|a, b| {
            let da = bus.location.distance_km(&a.location);
            let db = bus.location.distance_km(&b.location);
            da.partial_cmp(&db)
                .expect("distances are finite")
                .then_with(|| a.profile_id.cmp(&b.profile_id))
        })
        .map(|p| p.region.as_str())
        .ok_or_else(|| Error::input(format!("no feeder profiles for bus {}", bus.bus_id)))
}

/// Synthesize every bus. Per-bus work is parallel; output order and
/// content depend only on the inputs and the master seed.
pub fn synthesize_system(inputs: &SynthesisInputs) -> Result<SystemSynthesis> {
    inputs.config.validate()?;
    if inputs.buses.is_empty() {
        return Err(Error::input("bus table is empty"));
    }

    let mut buses: Vec<&LoadBus> = inputs.buses.iter().collect();
    buses.sort_by_key(|b| b.bus_id);

    let feeders: Vec<&PrototypeProfile> = inputs
        .corpus
        .iter()
        .filter(|p| p.kind == ProfileKind::Feeder)
        .collect();
    if feeders.is_empty() {
        return Err(Error::input("corpus has no feeder profiles"));
    }

    let industrial = synthesize_industrial_corpus(
        inputs.facilities,
        inputs.sector_curves,
        inputs.config.master_seed,
    )?;

    let per_bus: Vec<(BusSynthesisResult, BusAssignment)> = buses
        .par_iter()
        .map(|bus| {
            let utility = assign_utility(bus, inputs.utilities)?;
            let ratio = composition_ratio(utility)?;
            let region = bus_region(bus, &feeders)?;
            let region_feeders: Vec<&PrototypeProfile> = feeders
                .iter()
                .copied()
                .filter(|p| p.region == region)
                .collect();

            let pools = ComponentPools {
                residential: if ratio.residential > 0.0 {
                    residential_pool(bus, inputs.corpus)?
                } else {
                    Vec::new()
                },
                commercial: if ratio.commercial > 0.0 {
                    commercial_pool(bus, inputs.corpus)?
                } else {
                    Vec::new()
                },
                industrial: industrial_pool(bus.peak_mw * ratio.industrial, &industrial)?,
            };

            let result = build_bus_series(bus, &ratio, &pools, &inputs.config, &region_feeders)?;
            let assignment = BusAssignment {
                bus_id: bus.bus_id,
                utility_id: utility.utility_id.clone(),
                region: region.to_string(),
                ratio,
            };
            Ok((result, assignment))
        })
        .collect::<Result<_>>()?;

    let (results, assignments) = per_bus.into_iter().unzip();
    Ok(SystemSynthesis {
        results,
        assignments,
    })
}
