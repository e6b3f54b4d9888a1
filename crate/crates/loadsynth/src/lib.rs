//! Synthesis and statistical validation of hourly, year-long, bus-level
//! electric load time series.
//!
//! The pipeline aggregates prototypical residential, commercial, and
//! industrial profiles into a unique series per load bus, corrects each
//! bus's load factor against a feeder-derived reference, validates the
//! result statistically (monthly load factors, load distribution curves,
//! autocorrelation), and can net a behind-the-meter solar "duck curve"
//! scenario against the benchmark series.
//!
//! Entry points:
//! - [`ingest`]: file formats and the desk-scale corpus generator
//! - [`pipeline::synthesize_system`]: the end-to-end engine
//! - [`validation::validate_series`]: the metric suite
//! - [`scenario::apply_duck_curve`]: duck-curve construction

pub mod aggregation;
pub mod composition;
pub mod error;
pub mod ingest;
pub mod pipeline;
pub mod prototypes;
pub mod rng;
pub mod scenario;
pub mod series;
pub mod types;
pub mod validation;

pub use error::{Error, Result};
pub use series::{HourlySeries, HOURS_PER_YEAR};
pub use types::{CompositionRatio, GeoPoint, LoadBus, LoadType};
