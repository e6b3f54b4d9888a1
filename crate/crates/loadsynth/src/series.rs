//! Year-long hourly real-power series and its basic statistics.
//!
//! The series is the common currency of the pipeline: 8760 hourly MW
//! values covering a non-leap year, hour 0 being January 1, 00:00.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Hours in the non-leap modeling year.
pub const HOURS_PER_YEAR: usize = 8760;

/// A year of hourly real-power values in MW.
///
/// Invariants enforced at construction: exactly [`HOURS_PER_YEAR`] values,
/// all finite and non-negative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HourlySeries {
    label: String,
    values: Vec<f64>,
}

impl HourlySeries {
    pub fn new(label: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        let label = label.into();
        if values.len() != HOURS_PER_YEAR {
            return Err(Error::InvalidSeries {
                label,
                reason: format!("expected {HOURS_PER_YEAR} values, got {}", values.len()),
            });
        }
        if let Some((t, v)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < 0.0)
        {
            return Err(Error::InvalidSeries {
                label,
                reason: format!("value {v} at hour {t} is negative or non-finite"),
            });
        }
        Ok(Self { label, values })
    }

    /// A series holding the same value at every hour.
    pub fn constant(label: impl Into<String>, value: f64) -> Result<Self> {
        Self::new(label, vec![value; HOURS_PER_YEAR])
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / HOURS_PER_YEAR as f64
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Ratio of average to peak value, in (0, 1].
    ///
    /// Errors on an all-zero series, whose load factor is undefined.
    pub fn load_factor(&self) -> Result<f64> {
        let max = self.max();
        if max <= 0.0 {
            return Err(Error::DegenerateSeries(self.label.clone()));
        }
        Ok(self.mean() / max)
    }

    /// Shift the series by `k` hours with wraparound across the year
    /// boundary: `out[t] = in[(t - k) mod 8760]`.
    ///
    /// The multiset of values (hence mean, max, min, and load factor) is
    /// preserved exactly.
    pub fn circular_shift(&self, k: i64) -> HourlySeries {
        let n = HOURS_PER_YEAR as i64;
        let k = k.rem_euclid(n) as usize;
        if k == 0 {
            return self.clone();
        }
        let mut out = Vec::with_capacity(HOURS_PER_YEAR);
        // out[t] = in[(t - k) mod n]: the last k values wrap to the front.
        out.extend_from_slice(&self.values[HOURS_PER_YEAR - k..]);
        out.extend_from_slice(&self.values[..HOURS_PER_YEAR - k]);
        HourlySeries {
            label: self.label.clone(),
            values: out,
        }
    }

    /// Multiply every value by `scale` (> 0). Load factor is unchanged.
    pub fn scaled(&self, scale: f64) -> Result<HourlySeries> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::input(format!("scale must be positive, got {scale}")));
        }
        HourlySeries::new(
            self.label.clone(),
            self.values.iter().map(|v| v * scale).collect(),
        )
    }
}

/// Sum a set of series pointwise into one aggregate series.
pub fn sum_series(label: impl Into<String>, series: &[&HourlySeries]) -> Result<HourlySeries> {
    let mut acc = vec![0.0; HOURS_PER_YEAR];
    for s in series {
        for (a, v) in acc.iter_mut().zip(s.values()) {
            *a += v;
        }
    }
    HourlySeries::new(label, acc)
}
