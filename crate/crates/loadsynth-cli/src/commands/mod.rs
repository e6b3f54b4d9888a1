pub mod gen_corpus;
pub mod scenario;
pub mod synth;
pub mod validate;

use loadsynth::types::CompositionRatio;
use serde::{Deserialize, Serialize};

/// Per-bus synthesis metadata persisted next to the series file and
/// consumed by the scenario command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BusMetadata {
    pub bus_id: u64,
    pub lat: f64,
    pub lon: f64,
    pub peak_mw: f64,
    pub power_factor: f64,
    pub utility_id: String,
    pub region: String,
    pub ratio: CompositionRatio,
    pub reference_load_factor: f64,
    pub lf_constant_mw: f64,
    pub final_scale: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SynthMetadata {
    pub seed: u64,
    pub config: loadsynth::aggregation::AggregationConfig,
    pub buses: Vec<BusMetadata>,
}
