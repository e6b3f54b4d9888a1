//! Shared fixtures for the synthesis benchmarks.

use loadsynth::aggregation::AggregationConfig;
use loadsynth::ingest::desk::{generate_desk_buses, generate_desk_corpus, DeskCorpus};
use loadsynth::types::LoadBus;

pub const BENCH_SEED: u64 = 1234;

/// A small fixed corpus plus bus table for benchmark runs.
pub fn bench_inputs(n_buses: usize) -> (DeskCorpus, Vec<LoadBus>, AggregationConfig) {
    let regions = vec!["north".to_string(), "south".to_string()];
    let corpus = generate_desk_corpus(BENCH_SEED, 4, &regions).expect("corpus");
    let buses = generate_desk_buses(BENCH_SEED, n_buses, &corpus).expect("buses");
    let config = AggregationConfig::default().with_seed(BENCH_SEED);
    (corpus, buses, config)
}
