//! Bus-to-utility assignment and load composition ratios.
//!
//! Each bus is matched to the utility with the nearest service-territory
//! centroid; the utility's sales split becomes the bus composition ratio.

use crate::error::{Error, Result};
use crate::ingest::UtilitySalesRecord;
use crate::types::{CompositionRatio, LoadBus, LoadType};

/// The utility whose centroid is nearest to the bus (great-circle
/// distance); exact ties go to the lexicographically smallest utility id.
pub fn assign_utility<'a>(
    bus: &LoadBus,
    utilities: &'a [UtilitySalesRecord],
) -> Result<&'a UtilitySalesRecord> {
    utilities
        .iter()
        .min_by(|a, b| {
            let da = bus.location.distance_km(&a.centroid);
            let db = bus.location.distance_km(&b.centroid);
            da.partial_cmp(&db)
                .expect("distances are finite")
                .then_with(|| a.utility_id.cmp(&b.utility_id))
        })
        .ok_or_else(|| Error::input("utility list is empty"))
}

/// Normalize a utility's sales triple into a composition ratio.
pub fn composition_ratio(utility: &UtilitySalesRecord) -> Result<CompositionRatio> {
    let total = utility.sales_mwh.total();
    if total <= 0.0 {
        return Err(Error::input(format!(
            "utility {}: all sales are zero",
            utility.utility_id
        )));
    }
    CompositionRatio::new(
        utility.sales_mwh.residential / total,
        utility.sales_mwh.commercial / total,
        utility.sales_mwh.industrial / total,
    )
}

/// The load type with the largest share. Ties resolve in the fixed order
/// residential, commercial, industrial.
pub fn dominant_type(ratio: &CompositionRatio) -> LoadType {
    let mut best = LoadType::Residential;
    for candidate in [LoadType::Commercial, LoadType::Industrial] {
        if ratio.component(candidate) > ratio.component(best) {
            best = candidate;
        }
    }
    best
}

/// Share of buses dominated by each load type, in percent (sums to 100).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DominanceCensus {
    pub residential_pct: f64,
    pub commercial_pct: f64,
    pub industrial_pct: f64,
}

pub fn dominant_type_census(ratios: &[CompositionRatio]) -> Result<DominanceCensus> {
    if ratios.is_empty() {
        return Err(Error::input("census needs at least one bus"));
    }
    let mut counts = [0usize; 3];
    for r in ratios {
        match dominant_type(r) {
            LoadType::Residential => counts[0] += 1,
            LoadType::Commercial => counts[1] += 1,
            LoadType::Industrial => counts[2] += 1,
        }
    }
    let total = ratios.len() as f64;
    Ok(DominanceCensus {
        residential_pct: 100.0 * counts[0] as f64 / total,
        commercial_pct: 100.0 * counts[1] as f64 / total,
        industrial_pct: 100.0 * counts[2] as f64 / total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::SalesTriple;
    use crate::types::GeoPoint;

    fn utility(id: &str, lat: f64, lon: f64, sales: (f64, f64, f64)) -> UtilitySalesRecord {
        UtilitySalesRecord::new(
            id,
            GeoPoint::new(lat, lon).unwrap(),
            SalesTriple {
                residential: sales.0,
                commercial: sales.1,
                industrial: sales.2,
            },
        )
        .unwrap()
    }

    fn bus_at(lat: f64, lon: f64) -> LoadBus {
        LoadBus::new(1, GeoPoint::new(lat, lon).unwrap(), 100.0, 0.95).unwrap()
    }

    #[test]
    fn nearest_utility_wins() {
        let utils = vec![
            utility("far", 5.0, 0.0, (1.0, 1.0, 1.0)),
            utility("near", 1.0, 0.0, (1.0, 1.0, 1.0)),
        ];
        let picked = assign_utility(&bus_at(0.0, 0.0), &utils).unwrap();
        assert_eq!(picked.utility_id, "near");
    }

    #[test]
    fn single_utility_is_returned() {
        let utils = vec![utility("only", 10.0, 10.0, (1.0, 0.0, 0.0))];
        assert_eq!(
            assign_utility(&bus_at(0.0, 0.0), &utils).unwrap().utility_id,
            "only"
        );
    }

    #[test]
    fn equidistant_tie_breaks_to_smallest_id() {
        // Same latitude offset north and south: identical distances.
        let utils = vec![
            utility("B", 1.0, 0.0, (1.0, 1.0, 1.0)),
            utility("A", -1.0, 0.0, (1.0, 1.0, 1.0)),
        ];
        let picked = assign_utility(&bus_at(0.0, 0.0), &utils).unwrap();
        assert_eq!(picked.utility_id, "A");
    }

    #[test]
    fn assignment_is_permutation_invariant() {
        let mut utils = vec![
            utility("u3", 2.0, 3.0, (1.0, 1.0, 1.0)),
            utility("u1", -1.5, 0.5, (1.0, 1.0, 1.0)),
            utility("u2", 0.5, -2.0, (1.0, 1.0, 1.0)),
        ];
        let bus = bus_at(0.3, 0.1);
        let first = assign_utility(&bus, &utils).unwrap().utility_id.clone();
        utils.reverse();
        assert_eq!(assign_utility(&bus, &utils).unwrap().utility_id, first);
        utils.swap(0, 1);
        assert_eq!(assign_utility(&bus, &utils).unwrap().utility_id, first);
    }

    #[test]
    fn empty_utility_list_errors() {
        assert!(assign_utility(&bus_at(0.0, 0.0), &[]).is_err());
    }

    #[test]
    fn ratio_normalizes_sales() {
        let r = composition_ratio(&utility("u", 0.0, 0.0, (60.0, 30.0, 10.0))).unwrap();
        assert!((r.residential - 0.6).abs() < 1e-12);
        assert!((r.commercial - 0.3).abs() < 1e-12);
        assert!((r.industrial - 0.1).abs() < 1e-12);
    }

    #[test]
    fn pure_residential_and_symmetric_sales() {
        let r = composition_ratio(&utility("u", 0.0, 0.0, (1.0, 0.0, 0.0))).unwrap();
        assert_eq!(
            (r.residential, r.commercial, r.industrial),
            (1.0, 0.0, 0.0)
        );
        let r = composition_ratio(&utility("u", 0.0, 0.0, (5.0, 5.0, 5.0))).unwrap();
        assert!((r.residential - 1.0 / 3.0).abs() < 1e-12);
        assert!((r.commercial - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn dominant_type_argmax_and_ties() {
        let r = CompositionRatio::new(0.6, 0.3, 0.1).unwrap();
        assert_eq!(dominant_type(&r), LoadType::Residential);
        let r = CompositionRatio::new(0.2, 0.5, 0.3).unwrap();
        assert_eq!(dominant_type(&r), LoadType::Commercial);
        // Tie between residential and commercial: priority order wins.
        let r = CompositionRatio::new(0.4, 0.4, 0.2).unwrap();
        assert_eq!(dominant_type(&r), LoadType::Residential);
        let r = CompositionRatio::new(0.1, 0.45, 0.45).unwrap();
        assert_eq!(dominant_type(&r), LoadType::Commercial);
    }

    #[test]
    fn dominance_is_invariant_under_sales_scaling() {
        let base = utility("u", 0.0, 0.0, (12.0, 30.0, 18.0));
        let scaled = utility("u", 0.0, 0.0, (120.0, 300.0, 180.0));
        assert_eq!(
            dominant_type(&composition_ratio(&base).unwrap()),
            dominant_type(&composition_ratio(&scaled).unwrap())
        );
    }

    #[test]
    fn census_counts_and_sums() {
        let all_res = vec![CompositionRatio::new(1.0, 0.0, 0.0).unwrap(); 4];
        let census = dominant_type_census(&all_res).unwrap();
        assert_eq!(census.residential_pct, 100.0);

        let mixed = vec![
            CompositionRatio::new(0.7, 0.2, 0.1).unwrap(),
            CompositionRatio::new(0.1, 0.8, 0.1).unwrap(),
        ];
        let census = dominant_type_census(&mixed).unwrap();
        assert_eq!(census.residential_pct, 50.0);
        assert_eq!(census.commercial_pct, 50.0);
        let total = census.residential_pct + census.commercial_pct + census.industrial_pct;
        assert!((total - 100.0).abs() < 1e-9);
    }

    #[test]
    fn census_rejects_empty_input() {
        assert!(dominant_type_census(&[]).is_err());
    }
}
