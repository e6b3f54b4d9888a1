//! Fundamental records: geographic points, load buses, load types, and
//! composition ratios.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Mean Earth radius used for great-circle distances, in km.
pub const EARTH_RADIUS_KM: f64 = 6371.0;

/// The three consumer load classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LoadType {
    Residential,
    Commercial,
    Industrial,
}

impl LoadType {
    pub const ALL: [LoadType; 3] = [
        LoadType::Residential,
        LoadType::Commercial,
        LoadType::Industrial,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            LoadType::Residential => "residential",
            LoadType::Commercial => "commercial",
            LoadType::Industrial => "industrial",
        }
    }
}

impl fmt::Display for LoadType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A latitude/longitude pair in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeoPoint {
    pub lat: f64,
    pub lon: f64,
}

impl GeoPoint {
    pub fn new(lat: f64, lon: f64) -> Result<Self> {
        if !(lat.is_finite() && (-90.0..=90.0).contains(&lat)) {
            return Err(Error::input(format!(
                "latitude {lat} outside [-90, 90]"
            )));
        }
        if !(lon.is_finite() && (-180.0..=180.0).contains(&lon)) {
            return Err(Error::input(format!(
                "longitude {lon} outside [-180, 180]"
            )));
        }
        Ok(Self { lat, lon })
    }

    /// Great-circle (haversine) distance to `other` on a spherical Earth.
    pub fn distance_km(&self, other: &GeoPoint) -> f64 {
        let (lat1, lon1) = (self.lat.to_radians(), self.lon.to_radians());
        let (lat2, lon2) = (other.lat.to_radians(), other.lon.to_radians());
        let dlat = lat2 - lat1;
        let dlon = lon2 - lon1;
        let a = (dlat / 2.0).sin().powi(2)
            + lat1.cos() * lat2.cos() * (dlon / 2.0).sin().powi(2);
        2.0 * EARTH_RADIUS_KM * a.sqrt().min(1.0).asin()
    }

    /// Total order on the raw coordinate pair, used only as a
    /// deterministic tie-breaker when grouping profiles by location.
    pub(crate) fn ord_key(&self) -> (u64, u64) {
        (self.lat.to_bits(), self.lon.to_bits())
    }
}

/// A load bus from the synthetic base case: the synthesis target.
///
/// `peak_mw` is the base-case bus size and becomes the peak of the
/// synthesized series; `power_factor` is fixed per bus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoadBus {
    pub bus_id: u64,
    pub location: GeoPoint,
    pub peak_mw: f64,
    pub power_factor: f64,
}

impl LoadBus {
    pub fn new(bus_id: u64, location: GeoPoint, peak_mw: f64, power_factor: f64) -> Result<Self> {
        if !(peak_mw.is_finite() && peak_mw > 0.0) {
            return Err(Error::input(format!(
                "bus {bus_id}: peak must be positive, got {peak_mw}"
            )));
        }
        if !(power_factor.is_finite() && power_factor > 0.0 && power_factor <= 1.0) {
            return Err(Error::input(format!(
                "bus {bus_id}: power factor {power_factor} outside (0, 1]"
            )));
        }
        Ok(Self {
            bus_id,
            location,
            peak_mw,
            power_factor,
        })
    }
}

/// Fractional split of a bus's load across the three load types.
/// Components are in [0, 1] and sum to 1 within 1e-9.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompositionRatio {
    pub residential: f64,
    pub commercial: f64,
    pub industrial: f64,
}

impl CompositionRatio {
    pub const SUM_TOLERANCE: f64 = 1e-9;

    pub fn new(residential: f64, commercial: f64, industrial: f64) -> Result<Self> {
        for (name, v) in [
            ("residential", residential),
            ("commercial", commercial),
            ("industrial", industrial),
        ] {
            if !(v.is_finite() && (0.0..=1.0).contains(&v)) {
                return Err(Error::input(format!(
                    "{name} fraction {v} outside [0, 1]"
                )));
            }
        }
        let sum = residential + commercial + industrial;
        if (sum - 1.0).abs() > Self::SUM_TOLERANCE {
            return Err(Error::input(format!(
                "composition fractions sum to {sum}, expected 1"
            )));
        }
        Ok(Self {
            residential,
            commercial,
            industrial,
        })
    }

    pub fn component(&self, load_type: LoadType) -> f64 {
        match load_type {
            LoadType::Residential => self.residential,
            LoadType::Commercial => self.commercial,
            LoadType::Industrial => self.industrial,
        }
    }
}
