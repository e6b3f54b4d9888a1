//! Iterative bottom-up aggregation of prototype profiles into bus-level
//! series.
//!
//! Per load type, profiles are drawn with probability proportional to
//! 1/sqrt(mean), individually time-shifted (integer hours, symmetric
//! normal binning), hour-pair permuted, and noised, then accumulated
//! until the component target peak is reached. The summed bus series gets
//! a constant offset so its load factor matches a feeder-derived
//! reference, then one multiplicative rescale pins the peak to the bus
//! size.

use crate::error::{Error, Result};
use crate::ingest::PrototypeProfile;
use crate::rng::substream_rng;
use crate::series::{HourlySeries, HOURS_PER_YEAR};
use crate::types::{CompositionRatio, LoadBus, LoadType};
use rand::distributions::{Distribution, WeightedIndex};
use rand::Rng;
use rand_distr::Normal;
use serde::{Deserialize, Serialize};

/// One value per load type.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerLoadType<T> {
    pub residential: T,
    pub commercial: T,
    pub industrial: T,
}

impl<T: Copy> PerLoadType<T> {
    pub fn get(&self, load_type: LoadType) -> T {
        match load_type {
            LoadType::Residential => self.residential,
            LoadType::Commercial => self.commercial,
            LoadType::Industrial => self.industrial,
        }
    }
}

/// Knobs of the aggregation engine. Defaults carry the reference values:
/// shift sigmas 0.4/0.3/0.1 hours and 100/100/50 permuted hour pairs for
/// residential/commercial/industrial, 2% multiplicative noise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AggregationConfig {
    pub sigma_shift: PerLoadType<f64>,
    pub permutation_pairs: PerLoadType<usize>,
    pub noise_sigma_frac: f64,
    pub master_seed: u64,
}

impl Default for AggregationConfig {
    fn default() -> Self {
        Self {
            sigma_shift: PerLoadType {
                residential: 0.4,
                commercial: 0.3,
                industrial: 0.1,
            },
            permutation_pairs: PerLoadType {
                residential: 100,
                commercial: 100,
                industrial: 50,
            },
            noise_sigma_frac: 0.02,
            master_seed: 0,
        }
    }
}

impl AggregationConfig {
    pub fn validate(&self) -> Result<()> {
        for lt in LoadType::ALL {
            let sigma = self.sigma_shift.get(lt);
            if !(sigma.is_finite() && sigma > 0.0) {
                return Err(Error::input(format!(
                    "shift sigma for {lt} must be positive, got {sigma}"
                )));
            }
        }
        if !(self.noise_sigma_frac.is_finite() && self.noise_sigma_frac >= 0.0) {
            return Err(Error::input(format!(
                "noise sigma must be non-negative, got {}",
                self.noise_sigma_frac
            )));
        }
        Ok(())
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }
}

/// Pick probabilities for a pool: w_i = 1/sqrt(mean_i), normalized.
/// Lower-average profiles are more likely to be drawn.
pub fn selection_weights(means: &[f64]) -> Result<Vec<f64>> {
    if means.is_empty() {
        return Err(Error::input("selection pool is empty"));
    }
    let mut weights = Vec::with_capacity(means.len());
    for m in means {
        if !(m.is_finite() && *m > 0.0) {
            return Err(Error::input(format!(
                "selection weights need positive means, got {m}"
            )));
        }
        weights.push(1.0 / m.sqrt());
    }
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    Ok(weights)
}

/// Integer time shift with `P(x) = Phi((x+0.5)/sigma) - Phi((x-0.5)/sigma)`:
/// a zero-mean normal draw rounded to the nearest hour.
pub fn sample_time_shift<R: Rng>(sigma: f64, rng: &mut R) -> Result<i64> {
    if !(sigma.is_finite() && sigma >= 0.0) {
        return Err(Error::input(format!(
            "shift sigma must be non-negative, got {sigma}"
        )));
    }
    let normal = Normal::new(0.0, sigma).expect("validated sigma");
    Ok(normal.sample(rng).round() as i64)
}

fn swap_pairs(series: &HourlySeries, pairs: &[(usize, usize)]) -> HourlySeries {
    let mut values = series.values().to_vec();
    for (a, b) in pairs {
        values.swap(*a, *b);
    }
    HourlySeries::new(series.label(), values).expect("swap preserves validity")
}

/// Swap the values of `n_pairs` disjoint hour pairs drawn uniformly
/// without replacement. The multiset of values is preserved.
pub fn permute_hour_pairs<R: Rng>(
    series: &HourlySeries,
    n_pairs: usize,
    rng: &mut R,
) -> Result<HourlySeries> {
    if 2 * n_pairs > HOURS_PER_YEAR {
        return Err(Error::input(format!(
            "{n_pairs} pairs need {} distinct hours, the year has {HOURS_PER_YEAR}",
            2 * n_pairs
        )));
    }
    if n_pairs == 0 {
        return Ok(series.clone());
    }
    let indices = rand::seq::index::sample(rng, HOURS_PER_YEAR, 2 * n_pairs);
    let pairs: Vec<(usize, usize)> = indices
        .iter()
        .collect::<Vec<_>>()
        .chunks_exact(2)
        .map(|c| (c[0], c[1]))
        .collect();
    Ok(swap_pairs(series, &pairs))
}

/// Multiplicative white Gaussian noise, clamped so no value goes
/// negative: `out[t] = max(0, s[t] * (1 + eps_t))`.
pub fn add_noise<R: Rng>(
    series: &HourlySeries,
    sigma_frac: f64,
    rng: &mut R,
) -> Result<HourlySeries> {
    if !(sigma_frac.is_finite() && sigma_frac >= 0.0) {
        return Err(Error::input(format!(
            "noise sigma must be non-negative, got {sigma_frac}"
        )));
    }
    if sigma_frac == 0.0 {
        return Ok(series.clone());
    }
    let normal = Normal::new(0.0, sigma_frac).expect("validated sigma");
    let values = series
        .values()
        .iter()
        .map(|v| (v * (1.0 + normal.sample(rng))).max(0.0))
        .collect();
    HourlySeries::new(series.label(), values)
}

/// Aggregate one load-type component: draw, transform, and accumulate
/// profiles until the running maximum reaches `target_peak_mw`.
pub fn aggregate_component<R: Rng>(
    target_peak_mw: f64,
    pool: &[&PrototypeProfile],
    load_type: LoadType,
    config: &AggregationConfig,
    rng: &mut R,
) -> Result<HourlySeries> {
    if !(target_peak_mw.is_finite() && target_peak_mw >= 0.0) {
        return Err(Error::input(format!(
            "component target must be non-negative, got {target_peak_mw}"
        )));
    }
    let label = format!("component_{load_type}");
    if target_peak_mw == 0.0 {
        return HourlySeries::new(label, vec![0.0; HOURS_PER_YEAR]);
    }
    if pool.is_empty() {
        return Err(Error::input(format!(
            "{load_type} pool is empty but its target is {target_peak_mw} MW"
        )));
    }

    let means: Vec<f64> = pool.iter().map(|p| p.series.mean()).collect();
    let probabilities = selection_weights(&means)?;
    let picker = WeightedIndex::new(&probabilities)
        .map_err(|e| Error::input(format!("bad selection weights: {e}")))?;
    let sigma = config.sigma_shift.get(load_type);
    let pairs = config.permutation_pairs.get(load_type);

    let min_mean = means.iter().copied().fold(f64::INFINITY, f64::min);
    let max_iterations = ((target_peak_mw / min_mean) * 4.0) as usize + 16;

    let mut acc = vec![0.0; HOURS_PER_YEAR];
    for _ in 0..max_iterations {
        let picked = pool[picker.sample(rng)];
        let shift = sample_time_shift(sigma, rng)?;
        let shifted = picked.series.circular_shift(shift);
        let permuted = permute_hour_pairs(&shifted, pairs, rng)?;
        let noisy = add_noise(&permuted, config.noise_sigma_frac, rng)?;
        for (a, v) in acc.iter_mut().zip(noisy.values()) {
            *a += v;
        }
        let acc_max = acc.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if acc_max >= target_peak_mw {
            return HourlySeries::new(label, acc);
        }
    }
    Err(Error::input(format!(
        "{load_type} aggregation did not reach {target_peak_mw} MW in {max_iterations} iterations"
    )))
}

/// Sum feeders drawn uniformly without replacement until their cumulative
/// peak covers the bus peak (or the pool runs out), and return the load
/// factor of the summed series.
pub fn feeder_reference_lf<R: Rng>(
    bus: &LoadBus,
    feeders: &[&PrototypeProfile],
    rng: &mut R,
) -> Result<f64> {
    if feeders.is_empty() {
        return Err(Error::input(format!(
            "no feeders in region for bus {}",
            bus.bus_id
        )));
    }
    let order = rand::seq::index::sample(rng, feeders.len(), feeders.len());
    let mut acc = vec![0.0; HOURS_PER_YEAR];
    let mut cumulative_peak = 0.0;
    for idx in order {
        let feeder = feeders[idx];
        for (a, v) in acc.iter_mut().zip(feeder.series.values()) {
            *a += v;
        }
        cumulative_peak += feeder.series.max();
        if cumulative_peak >= bus.peak_mw {
            break;
        }
    }
    HourlySeries::new(format!("feeder_reference_bus_{}", bus.bus_id), acc)?.load_factor()
}

/// Solve `(C + avg) / (C + max) = reference_lf` for the constant C,
/// clamped at zero when the reference sits below the current load factor.
pub fn lf_constant(avg_mw: f64, max_mw: f64, reference_lf: f64) -> Result<f64> {
    if !(avg_mw > 0.0 && avg_mw <= max_mw) {
        return Err(Error::input(format!(
            "need 0 < avg <= max, got avg {avg_mw}, max {max_mw}"
        )));
    }
    if !(reference_lf.is_finite() && reference_lf > 0.0) {
        return Err(Error::input(format!(
            "reference load factor must be positive, got {reference_lf}"
        )));
    }
    if reference_lf >= 1.0 {
        return Err(Error::input(format!(
            "reference load factor must be below 1, got {reference_lf}"
        )));
    }
    let constant = (reference_lf * max_mw - avg_mw) / (1.0 - reference_lf);
    Ok(constant.max(0.0))
}

/// The component pools feeding one bus.
#[derive(Debug, Clone, Default)]
pub struct ComponentPools<'a> {
    pub residential: Vec<&'a PrototypeProfile>,
    pub commercial: Vec<&'a PrototypeProfile>,
    pub industrial: Vec<&'a PrototypeProfile>,
}

impl<'a> ComponentPools<'a> {
    fn get(&self, load_type: LoadType) -> &[&'a PrototypeProfile] {
        match load_type {
            LoadType::Residential => &self.residential,
            LoadType::Commercial => &self.commercial,
            LoadType::Industrial => &self.industrial,
        }
    }
}

/// Finished synthesis of one bus.
#[derive(Debug, Clone, PartialEq)]
pub struct BusSynthesisResult {
    pub bus_id: u64,
    /// Final series: peak equals the bus size.
    pub series: HourlySeries,
    /// Raw aggregated components (residential, commercial, industrial),
    /// before the constant and the final rescale.
    pub component_series: [HourlySeries; 3],
    pub reference_load_factor: f64,
    /// The load-factor constant, MW (0 when clamped).
    pub lf_constant_mw: f64,
    /// Final multiplicative factor pinning the peak to the bus size.
    pub final_scale: f64,
}

/// Synthesize one bus end to end. All randomness comes from the bus's
/// own substream of `config.master_seed`, so results do not depend on
/// scheduling or thread count.
pub fn build_bus_series(
    bus: &LoadBus,
    ratio: &CompositionRatio,
    pools: &ComponentPools,
    config: &AggregationConfig,
    feeders: &[&PrototypeProfile],
) -> Result<BusSynthesisResult> {
    config.validate()?;
    if bus.peak_mw <= 0.0 {
        return Err(Error::input(format!("bus {} has zero peak", bus.bus_id)));
    }
    let mut rng = substream_rng(config.master_seed, bus.bus_id);

    let mut components = Vec::with_capacity(3);
    for load_type in LoadType::ALL {
        let target = bus.peak_mw * ratio.component(load_type);
        let component =
            aggregate_component(target, pools.get(load_type), load_type, config, &mut rng)?
                .with_label(format!("bus_{}_{load_type}", bus.bus_id));
        components.push(component);
    }

    let mut sum = vec![0.0; HOURS_PER_YEAR];
    for component in &components {
        for (a, v) in sum.iter_mut().zip(component.values()) {
            *a += v;
        }
    }
    let summed = HourlySeries::new(format!("bus_{}", bus.bus_id), sum)?;
    let avg = summed.mean();
    let max = summed.max();

    let reference_load_factor = feeder_reference_lf(bus, feeders, &mut rng)?;
    let constant = lf_constant(avg, max, reference_load_factor)?;
    let final_scale = bus.peak_mw / (max + constant);
    let values = summed
        .values()
        .iter()
        .map(|v| (v + constant) * final_scale)
        .collect();
    let series = HourlySeries::new(format!("bus_{}", bus.bus_id), values)?;

    Ok(BusSynthesisResult {
        bus_id: bus.bus_id,
        series,
        component_series: components
            .try_into()
            .expect("exactly three components"),
        reference_load_factor,
        lf_constant_mw: constant,
        final_scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::ProfileKind;
    use crate::types::GeoPoint;

    fn daily_profile(id: &str, mean_mw: f64, phase: f64) -> PrototypeProfile {
        let values = (0..HOURS_PER_YEAR)
            .map(|t| {
                mean_mw * (1.0 + 0.5 * (std::f64::consts::TAU * (t as f64 + phase) / 24.0).sin())
            })
            .collect();
        PrototypeProfile::new(
            id,
            ProfileKind::Residential,
            "residential",
            GeoPoint::new(0.0, 0.0).unwrap(),
            "r",
            HourlySeries::new(id, values).unwrap(),
        )
        .unwrap()
    }

    fn feeder_profile(id: &str, mean_mw: f64, phase: f64) -> PrototypeProfile {
        let mut p = daily_profile(id, mean_mw, phase);
        p.kind = ProfileKind::Feeder;
        p.subtype = "feeder_class_0".to_string();
        p
    }

    #[test]
    fn selection_weights_reference_cases() {
        assert_eq!(selection_weights(&[3.0]).unwrap(), vec![1.0]);

        let uniform = selection_weights(&[2.0, 2.0, 2.0, 2.0]).unwrap();
        for p in &uniform {
            assert!((p - 0.25).abs() < 1e-12);
        }

        let p = selection_weights(&[1.0, 4.0]).unwrap();
        assert!((p[0] - 2.0 / 3.0).abs() < 1e-12);
        assert!((p[1] - 1.0 / 3.0).abs() < 1e-12);

        assert!(selection_weights(&[1.0, 0.0]).is_err());
        assert!(selection_weights(&[]).is_err());
    }

    #[test]
    fn selection_weights_sum_to_one_and_decrease_in_mean() {
        let p = selection_weights(&[0.3, 1.7, 12.0, 55.5, 2.25]).unwrap();
        let total: f64 = p.iter().sum();
        assert!((total - 1.0).abs() < 1e-12);

        let base = selection_weights(&[2.0, 3.0, 4.0]).unwrap();
        let bumped = selection_weights(&[2.0, 6.0, 4.0]).unwrap();
        assert!(bumped[1] < base[1]);
    }

    #[test]
    fn tiny_sigma_always_shifts_zero() {
        let mut rng = substream_rng(0, 0);
        for _ in 0..1000 {
            assert_eq!(sample_time_shift(1e-9, &mut rng).unwrap(), 0);
        }
        assert_eq!(sample_time_shift(0.0, &mut rng).unwrap(), 0);
        assert!(sample_time_shift(-0.1, &mut rng).is_err());
    }

    #[test]
    fn shift_distribution_matches_normal_binning() {
        use statrs::distribution::{ContinuousCDF, Normal as NormalDist};
        let sigma = 0.4;
        let std_normal = NormalDist::new(0.0, 1.0).unwrap();
        let p_zero = std_normal.cdf(0.5 / sigma) - std_normal.cdf(-0.5 / sigma);

        let mut rng = substream_rng(123, 0);
        let draws = 100_000;
        let mut zeros = 0usize;
        let mut sum = 0i64;
        let mut extreme = 0usize;
        for _ in 0..draws {
            let x = sample_time_shift(sigma, &mut rng).unwrap();
            if x == 0 {
                zeros += 1;
            }
            if x.abs() >= 4 {
                extreme += 1;
            }
            sum += x;
        }
        let freq = zeros as f64 / draws as f64;
        assert!((freq - p_zero).abs() < 0.01, "freq {freq} vs {p_zero}");
        assert!((sum as f64 / draws as f64).abs() < 0.02);
        // P(|x| >= 4) is below 1e-6 at sigma 0.4.
        assert_eq!(extreme, 0);
    }

    #[test]
    fn permute_zero_pairs_is_identity() {
        let s = HourlySeries::constant("s", 2.0).unwrap();
        let mut rng = substream_rng(1, 1);
        assert_eq!(permute_hour_pairs(&s, 0, &mut rng).unwrap(), s);
    }

    #[test]
    fn single_pair_swaps_the_two_values() {
        let values: Vec<f64> = (0..HOURS_PER_YEAR).map(|t| t as f64).collect();
        let s = HourlySeries::new("ramp", values).unwrap();
        let swapped = swap_pairs(&s, &[(2, 5)]);
        assert_eq!(swapped.values()[2], 5.0);
        assert_eq!(swapped.values()[5], 2.0);
        assert_eq!(swapped.values()[3], 3.0);
    }

    #[test]
    fn permutation_preserves_value_multiset() {
        let values: Vec<f64> = (0..HOURS_PER_YEAR).map(|t| (t % 97) as f64 * 0.5).collect();
        let s = HourlySeries::new("s", values).unwrap();
        let mut rng = substream_rng(5, 5);
        let permuted = permute_hour_pairs(&s, 100, &mut rng).unwrap();
        let mut a = s.values().to_vec();
        let mut b = permuted.values().to_vec();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        assert_eq!(a, b);
    }

    #[test]
    fn permute_rejects_too_many_pairs() {
        let s = HourlySeries::constant("s", 1.0).unwrap();
        let mut rng = substream_rng(1, 1);
        assert!(permute_hour_pairs(&s, HOURS_PER_YEAR / 2, &mut rng).is_ok());
        assert!(permute_hour_pairs(&s, HOURS_PER_YEAR / 2 + 1, &mut rng).is_err());
    }

    #[test]
    fn zero_noise_is_identity() {
        let s = HourlySeries::constant("s", 3.0).unwrap();
        let mut rng = substream_rng(2, 2);
        assert_eq!(add_noise(&s, 0.0, &mut rng).unwrap(), s);
    }

    #[test]
    fn noise_is_unbiased_and_non_negative() {
        let s = HourlySeries::constant("s", 10.0).unwrap();
        let sigma = 0.02;
        let mut rng = substream_rng(3, 3);
        let noisy = add_noise(&s, sigma, &mut rng).unwrap();
        let mean_rel: f64 = noisy
            .values()
            .iter()
            .zip(s.values())
            .map(|(o, i)| (o - i) / i)
            .sum::<f64>()
            / HOURS_PER_YEAR as f64;
        // CLT bound on the mean of 8760 relative deviations.
        assert!(mean_rel.abs() < 3.0 * sigma / (HOURS_PER_YEAR as f64).sqrt());

        // Heavy noise exercises the clamp.
        let wild = add_noise(&s, 10.0, &mut rng).unwrap();
        assert!(wild.values().iter().all(|v| *v >= 0.0));
        assert!(wild.values().contains(&0.0));
    }

    #[test]
    fn zero_target_gives_zero_component() {
        let config = AggregationConfig::default();
        let mut rng = substream_rng(0, 0);
        let out = aggregate_component(0.0, &[], LoadType::Residential, &config, &mut rng).unwrap();
        assert!(out.values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn constant_pool_stops_after_exact_iterations() {
        let profile = PrototypeProfile::new(
            "flat",
            ProfileKind::Residential,
            "residential",
            GeoPoint::new(0.0, 0.0).unwrap(),
            "r",
            HourlySeries::constant("flat", 1.0).unwrap(),
        )
        .unwrap();
        let config = AggregationConfig {
            noise_sigma_frac: 0.0,
            ..AggregationConfig::default()
        };
        let mut rng = substream_rng(0, 1);
        let out = aggregate_component(
            2.5,
            &[&profile],
            LoadType::Residential,
            &config,
            &mut rng,
        )
        .unwrap();
        // Shifts and permutations leave a constant series untouched, so
        // three accumulations of 1.0 reach the 2.5 target exactly.
        assert_eq!(out.max(), 3.0);
        assert_eq!(out.min(), 3.0);
    }

    #[test]
    fn component_peak_reaches_target() {
        let pool = [
            daily_profile("a", 2.0, 0.0),
            daily_profile("b", 3.0, 5.0),
            daily_profile("c", 1.0, 11.0),
        ];
        let refs: Vec<&PrototypeProfile> = pool.iter().collect();
        let config = AggregationConfig::default();
        for seed in 0..5u64 {
            let mut rng = substream_rng(seed, 0);
            let out =
                aggregate_component(40.0, &refs, LoadType::Commercial, &config, &mut rng).unwrap();
            assert!(out.max() >= 40.0);
            // Bounded overshoot: one noisy profile at most on top.
            let pool_max = refs.iter().map(|p| p.series.max()).fold(0.0, f64::max);
            assert!(out.max() <= 40.0 + pool_max * 1.5);
        }
    }

    #[test]
    fn feeder_reference_single_and_self_similar() {
        let feeder = feeder_profile("f0", 5.0, 0.0);
        let bus = LoadBus::new(1, GeoPoint::new(0.0, 0.0).unwrap(), 100.0, 0.95).unwrap();
        let mut rng = substream_rng(0, 0);
        let lf = feeder_reference_lf(&bus, &[&feeder], &mut rng).unwrap();
        assert!((lf - feeder.series.load_factor().unwrap()).abs() < 1e-12);

        // Two identical feeders sum to a scaled copy: same load factor.
        let twin = feeder_profile("f1", 5.0, 0.0);
        let mut rng = substream_rng(0, 1);
        let lf2 = feeder_reference_lf(&bus, &[&feeder, &twin], &mut rng).unwrap();
        assert!((lf2 - lf).abs() < 1e-12);
        assert!(lf2 > 0.0 && lf2 <= 1.0);
    }

    #[test]
    fn feeder_selection_stops_at_bus_scale() {
        // Tiny bus: a single feeder (whichever is drawn first) suffices,
        // so the reference equals one of the individual load factors.
        let f0 = feeder_profile("f0", 5.0, 0.0);
        let f1 = feeder_profile("f1", 50.0, 7.0);
        let bus = LoadBus::new(1, GeoPoint::new(0.0, 0.0).unwrap(), 1.0, 0.95).unwrap();
        let mut rng = substream_rng(4, 0);
        let lf = feeder_reference_lf(&bus, &[&f0, &f1], &mut rng).unwrap();
        let lf0 = f0.series.load_factor().unwrap();
        let lf1 = f1.series.load_factor().unwrap();
        assert!((lf - lf0).abs() < 1e-12 || (lf - lf1).abs() < 1e-12);
    }

    #[test]
    fn no_feeders_errors() {
        let bus = LoadBus::new(1, GeoPoint::new(0.0, 0.0).unwrap(), 1.0, 0.95).unwrap();
        let mut rng = substream_rng(0, 0);
        assert!(feeder_reference_lf(&bus, &[], &mut rng).is_err());
    }

    #[test]
    fn lf_constant_solves_reference_equation() {
        let c = lf_constant(50.0, 100.0, 0.6).unwrap();
        assert!((c - 25.0).abs() < 1e-12);
        assert!(((c + 50.0) / (c + 100.0) - 0.6).abs() < 1e-9);

        // Reference equal to the current load factor: nothing to add.
        assert_eq!(lf_constant(50.0, 100.0, 0.5).unwrap(), 0.0);
        // Reference below the current load factor: clamped.
        assert_eq!(lf_constant(50.0, 100.0, 0.4).unwrap(), 0.0);

        assert!(lf_constant(50.0, 100.0, 1.0).is_err());
        assert!(lf_constant(50.0, 100.0, 1.2).is_err());
        assert!(lf_constant(0.0, 100.0, 0.5).is_err());
        assert!(lf_constant(120.0, 100.0, 0.5).is_err());
    }

    fn build_fixture() -> (LoadBus, Vec<PrototypeProfile>, Vec<PrototypeProfile>) {
        let bus = LoadBus::new(17, GeoPoint::new(0.0, 0.0).unwrap(), 10.0, 0.95).unwrap();
        let pool = vec![
            daily_profile("a", 1.0, 0.0),
            daily_profile("b", 1.5, 3.0),
            daily_profile("c", 0.8, 9.0),
        ];
        // Flat-ish feeders: reference LF above the aggregated LF so the
        // constant is unclamped.
        let feeders = vec![{
            let values = (0..HOURS_PER_YEAR)
                .map(|t| 40.0 * (1.0 + 0.12 * (std::f64::consts::TAU * t as f64 / 24.0).sin()))
                .collect();
            let mut p = feeder_profile("f", 1.0, 0.0);
            p.series = HourlySeries::new("f", values).unwrap();
            p
        }];
        (bus, pool, feeders)
    }

    #[test]
    fn bus_series_peak_matches_bus_size() {
        let (bus, pool, feeders) = build_fixture();
        let pools = ComponentPools {
            residential: pool.iter().collect(),
            ..ComponentPools::default()
        };
        let ratio = CompositionRatio::new(1.0, 0.0, 0.0).unwrap();
        let config = AggregationConfig::default().with_seed(42);
        let feeder_refs: Vec<&PrototypeProfile> = feeders.iter().collect();
        let result = build_bus_series(&bus, &ratio, &pools, &config, &feeder_refs).unwrap();

        assert!((result.series.max() - 10.0).abs() / 10.0 < 1e-6);
        // Unclamped constant: the final load factor equals the reference.
        assert!(result.lf_constant_mw > 0.0);
        let lf = result.series.load_factor().unwrap();
        assert!(
            (lf - result.reference_load_factor).abs() < 1e-6,
            "lf {lf} vs reference {}",
            result.reference_load_factor
        );
        // Components stay zero for zero-ratio types.
        assert!(result.component_series[1].values().iter().all(|v| *v == 0.0));
        assert!(result.component_series[2].values().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn bus_series_reconstructs_from_parts() {
        let (bus, pool, feeders) = build_fixture();
        let pools = ComponentPools {
            residential: pool.iter().collect(),
            ..ComponentPools::default()
        };
        let ratio = CompositionRatio::new(1.0, 0.0, 0.0).unwrap();
        let config = AggregationConfig::default().with_seed(1);
        let feeder_refs: Vec<&PrototypeProfile> = feeders.iter().collect();
        let result = build_bus_series(&bus, &ratio, &pools, &config, &feeder_refs).unwrap();

        for (t, v) in result.series.values().iter().enumerate() {
            let parts: f64 = result.component_series.iter().map(|c| c.values()[t]).sum();
            let expected = (parts + result.lf_constant_mw) * result.final_scale;
            assert!((v - expected).abs() < 1e-9);
        }
    }

    #[test]
    fn bus_synthesis_is_deterministic() {
        let (bus, pool, feeders) = build_fixture();
        let pools = ComponentPools {
            residential: pool.iter().collect(),
            ..ComponentPools::default()
        };
        let ratio = CompositionRatio::new(1.0, 0.0, 0.0).unwrap();
        let config = AggregationConfig::default().with_seed(9);
        let feeder_refs: Vec<&PrototypeProfile> = feeders.iter().collect();
        let a = build_bus_series(&bus, &ratio, &pools, &config, &feeder_refs).unwrap();
        let b = build_bus_series(&bus, &ratio, &pools, &config, &feeder_refs).unwrap();
        assert_eq!(a, b);

        let other = build_bus_series(
            &bus,
            &ratio,
            &pools,
            &config.with_seed(10),
            &feeder_refs,
        )
        .unwrap();
        assert_ne!(a.series, other.series);
    }
}
