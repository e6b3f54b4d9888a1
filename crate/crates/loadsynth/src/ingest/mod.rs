//! Parsing and serialization of every on-disk format, plus the desk-scale
//! corpus generator used when the real public datasets are not available.
//!
//! Formats (all CSV unless noted):
//! - bus table: `bus_id,lat,lon,peak_mw,power_factor`
//! - profile file: one value per line, 8760 lines; described by a JSON
//!   manifest (array of `{file, kind, subtype, lat, lon, region}`)
//! - facility table: `facility_id,sector_code,annual_energy_mwh,annual_operating_hours`
//! - sector curve table: `sector_code,h0..h23`
//! - utility sales table: `utility_id,lat,lon,res_mwh,com_mwh,ind_mwh`
//! - solar resource table: `lat,lon,avg_kwh_m2_day`
//! - long-format series: `bus_id,hour,p_mw`, 8760 rows per bus
//!
//! Floats are written in shortest round-trip form, so parse(write(x)) == x
//! bit-for-bit.

pub mod desk;

use crate::error::{Error, Result};
use crate::scenario::SolarResourceRecord;
use crate::series::{HourlySeries, HOURS_PER_YEAR};
use crate::types::{GeoPoint, LoadBus};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;
use std::io::Write;
use std::path::Path;

/// What a prototype series describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileKind {
    Residential,
    Commercial,
    Industrial,
    Feeder,
}

impl ProfileKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ProfileKind::Residential => "residential",
            ProfileKind::Commercial => "commercial",
            ProfileKind::Industrial => "industrial",
            ProfileKind::Feeder => "feeder",
        }
    }
}

impl fmt::Display for ProfileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One prototypical building/facility/feeder series with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct PrototypeProfile {
    pub profile_id: String,
    pub kind: ProfileKind,
    pub subtype: String,
    pub location: GeoPoint,
    pub region: String,
    pub series: HourlySeries,
}

impl PrototypeProfile {
    pub fn new(
        profile_id: impl Into<String>,
        kind: ProfileKind,
        subtype: impl Into<String>,
        location: GeoPoint,
        region: impl Into<String>,
        series: HourlySeries,
    ) -> Result<Self> {
        let profile_id = profile_id.into();
        let subtype = subtype.into();
        if kind == ProfileKind::Residential && subtype != "residential" {
            return Err(Error::input(format!(
                "profile {profile_id}: residential subtype must be \"residential\", got \"{subtype}\""
            )));
        }
        Ok(Self {
            profile_id,
            kind,
            subtype,
            location,
            region: region.into(),
            series,
        })
    }
}

/// One industrial facility: sector, annual energy, annual operating hours.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndustrialFacilityRecord {
    pub facility_id: String,
    pub sector_code: String,
    pub annual_energy_mwh: f64,
    pub annual_operating_hours: f64,
}

impl IndustrialFacilityRecord {
    pub fn new(
        facility_id: impl Into<String>,
        sector_code: impl Into<String>,
        annual_energy_mwh: f64,
        annual_operating_hours: f64,
    ) -> Result<Self> {
        let facility_id = facility_id.into();
        if !(annual_energy_mwh.is_finite() && annual_energy_mwh > 0.0) {
            return Err(Error::input(format!(
                "facility {facility_id}: annual energy must be positive, got {annual_energy_mwh}"
            )));
        }
        if !(annual_operating_hours.is_finite()
            && annual_operating_hours > 0.0
            && annual_operating_hours <= HOURS_PER_YEAR as f64)
        {
            return Err(Error::input(format!(
                "facility {facility_id}: operating hours {annual_operating_hours} outside (0, 8760]"
            )));
        }
        Ok(Self {
            facility_id,
            sector_code: sector_code.into(),
            annual_energy_mwh,
            annual_operating_hours,
        })
    }
}

/// A 24-point per-unit daily load curve for one industrial sector,
/// normalized so the peak equals 1.
#[derive(Debug, Clone, PartialEq)]
pub struct DailySectorCurve {
    pub sector_code: String,
    pub per_unit_values: Vec<f64>,
}

impl DailySectorCurve {
    pub fn new(sector_code: impl Into<String>, per_unit_values: Vec<f64>) -> Result<Self> {
        let sector_code = sector_code.into();
        if per_unit_values.len() != 24 {
            return Err(Error::input(format!(
                "sector {sector_code}: daily curve must have 24 points, got {}",
                per_unit_values.len()
            )));
        }
        if per_unit_values
            .iter()
            .any(|v| !v.is_finite() || *v < 0.0 || *v > 1.0)
        {
            return Err(Error::input(format!(
                "sector {sector_code}: per-unit values must lie in [0, 1]"
            )));
        }
        let max = per_unit_values.iter().copied().fold(f64::MIN, f64::max);
        if (max - 1.0).abs() > 1e-9 {
            return Err(Error::input(format!(
                "sector {sector_code}: curve peak is {max}, must be normalized to 1"
            )));
        }
        Ok(Self {
            sector_code,
            per_unit_values,
        })
    }

    pub fn min(&self) -> f64 {
        self.per_unit_values.iter().copied().fold(f64::MAX, f64::min)
    }
}

/// Annual MWh sales of one utility, split by load type.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SalesTriple {
    pub residential: f64,
    pub commercial: f64,
    pub industrial: f64,
}

impl SalesTriple {
    pub fn total(&self) -> f64 {
        self.residential + self.commercial + self.industrial
    }
}

/// One utility: service-territory centroid and annual sales by load type.
#[derive(Debug, Clone, PartialEq)]
pub struct UtilitySalesRecord {
    pub utility_id: String,
    pub centroid: GeoPoint,
    pub sales_mwh: SalesTriple,
}

impl UtilitySalesRecord {
    pub fn new(
        utility_id: impl Into<String>,
        centroid: GeoPoint,
        sales_mwh: SalesTriple,
    ) -> Result<Self> {
        let utility_id = utility_id.into();
        for (name, v) in [
            ("residential", sales_mwh.residential),
            ("commercial", sales_mwh.commercial),
            ("industrial", sales_mwh.industrial),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::input(format!(
                    "utility {utility_id}: {name} sales must be non-negative, got {v}"
                )));
            }
        }
        if sales_mwh.total() <= 0.0 {
            return Err(Error::input(format!(
                "utility {utility_id}: total sales must be positive"
            )));
        }
        Ok(Self {
            utility_id,
            centroid,
            sales_mwh,
        })
    }
}

/// One manifest entry describing a profile file on disk.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub file: String,
    pub kind: ProfileKind,
    pub subtype: String,
    pub lat: f64,
    pub lon: f64,
    pub region: String,
}

// ---------------------------------------------------------------------------
// CSV helpers
// ---------------------------------------------------------------------------

fn check_header(actual: &csv::StringRecord, expected: &[&str], what: &str) -> Result<()> {
    let actual: Vec<&str> = actual.iter().collect();
    if actual != expected {
        return Err(Error::parse(
            Some(what),
            Some(1),
            format!(
                "bad header: expected \"{}\", got \"{}\"",
                expected.join(","),
                actual.join(",")
            ),
        ));
    }
    Ok(())
}

fn record_line(rec: &csv::StringRecord) -> Option<usize> {
    rec.position().map(|p| p.line() as usize)
}

fn reader_from(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes())
}

// ---------------------------------------------------------------------------
// Bus table
// ---------------------------------------------------------------------------

const BUS_HEADER: [&str; 5] = ["bus_id", "lat", "lon", "peak_mw", "power_factor"];

/// Parse a bus table. Rejects malformed rows (with their line number) and
/// duplicated bus ids.
pub fn parse_bus_table(text: &str) -> Result<Vec<LoadBus>> {
    let mut reader = reader_from(text);
    check_header(reader.headers()?, &BUS_HEADER, "bus table")?;
    let mut buses = Vec::new();
    let mut seen = HashSet::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::parse(Some("bus table"), None, e.to_string()))?;
        let line = record_line(&rec);
        let (bus_id, lat, lon, peak_mw, pf): (u64, f64, f64, f64, f64) = rec
            .deserialize(None)
            .map_err(|e| Error::parse(Some("bus table"), line, e.to_string()))?;
        if !seen.insert(bus_id) {
            return Err(Error::parse(
                Some("bus table"),
                line,
                format!("duplicate bus_id {bus_id}"),
            ));
        }
        let location = GeoPoint::new(lat, lon)
            .map_err(|e| Error::parse(Some("bus table"), line, e.to_string()))?;
        let bus = LoadBus::new(bus_id, location, peak_mw, pf)
            .map_err(|e| Error::parse(Some("bus table"), line, e.to_string()))?;
        buses.push(bus);
    }
    Ok(buses)
}

pub fn write_bus_table<W: Write>(buses: &[LoadBus], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(BUS_HEADER)?;
    for b in buses {
        out.serialize((
            b.bus_id,
            b.location.lat,
            b.location.lon,
            b.peak_mw,
            b.power_factor,
        ))?;
    }
    out.flush()?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Facility table
// ---------------------------------------------------------------------------

const FACILITY_HEADER: [&str; 4] = [
    "facility_id",
    "sector_code",
    "annual_energy_mwh",
    "annual_operating_hours",
];

pub fn parse_facility_table(text: &str) -> Result<Vec<IndustrialFacilityRecord>> {
    let mut reader = reader_from(text);
    check_header(reader.headers()?, &FACILITY_HEADER, "facility table")?;
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::parse(Some("facility table"), None, e.to_string()))?;
        let line = record_line(&rec);
        let (id, sector, energy, hours): (String, String, f64, f64) = rec
            .deserialize(None)
            .map_err(|e| Error::parse(Some("facility table"), line, e.to_string()))?;
        let record = IndustrialFacilityRecord::new(id, sector, energy, hours)
            .map_err(|e| Error::parse(Some("facility table"), line, e.to_string()))?;
        out.push(record);
    }
    Ok(out)
}

pub fn write_facility_table<W: Write>(records: &[IndustrialFacilityRecord], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(FACILITY_HEADER)?;
    for r in records {
        out.serialize((
            &r.facility_id,
            &r.sector_code,
            r.annual_energy_mwh,
            r.annual_operating_hours,
        ))?;
    }
    out.flush()?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Sector curve table
// ---------------------------------------------------------------------------

fn sector_curve_header() -> Vec<String> {
    let mut h = vec!["sector_code".to_string()];
    h.extend((0..24).map(|i| format!("h{i}")));
    h
}

pub fn parse_sector_curves(text: &str) -> Result<Vec<DailySectorCurve>> {
    let mut reader = reader_from(text);
    let expected = sector_curve_header();
    let expected_refs: Vec<&str> = expected.iter().map(String::as_str).collect();
    check_header(reader.headers()?, &expected_refs, "sector curve table")?;
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::parse(Some("sector curve table"), None, e.to_string()))?;
        let line = record_line(&rec);
        let (sector, values): (String, Vec<f64>) = rec
            .deserialize(None)
            .map_err(|e| Error::parse(Some("sector curve table"), line, e.to_string()))?;
        let curve = DailySectorCurve::new(sector, values)
            .map_err(|e| Error::parse(Some("sector curve table"), line, e.to_string()))?;
        out.push(curve);
    }
    Ok(out)
}

pub fn write_sector_curves<W: Write>(curves: &[DailySectorCurve], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(sector_curve_header())?;
    for c in curves {
        out.serialize((&c.sector_code, &c.per_unit_values))?;
    }
    out.flush()?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Utility table
// ---------------------------------------------------------------------------

const UTILITY_HEADER: [&str; 6] = ["utility_id", "lat", "lon", "res_mwh", "com_mwh", "ind_mwh"];

pub fn parse_utility_table(text: &str) -> Result<Vec<UtilitySalesRecord>> {
    let mut reader = reader_from(text);
    check_header(reader.headers()?, &UTILITY_HEADER, "utility table")?;
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::parse(Some("utility table"), None, e.to_string()))?;
        let line = record_line(&rec);
        let (id, lat, lon, res, com, ind): (String, f64, f64, f64, f64, f64) = rec
            .deserialize(None)
            .map_err(|e| Error::parse(Some("utility table"), line, e.to_string()))?;
        let centroid = GeoPoint::new(lat, lon)
            .map_err(|e| Error::parse(Some("utility table"), line, e.to_string()))?;
        let record = UtilitySalesRecord::new(
            id,
            centroid,
            SalesTriple {
                residential: res,
                commercial: com,
                industrial: ind,
            },
        )
        .map_err(|e| Error::parse(Some("utility table"), line, e.to_string()))?;
        out.push(record);
    }
    Ok(out)
}

pub fn write_utility_table<W: Write>(records: &[UtilitySalesRecord], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(UTILITY_HEADER)?;
    for r in records {
        out.serialize((
            &r.utility_id,
            r.centroid.lat,
            r.centroid.lon,
            r.sales_mwh.residential,
            r.sales_mwh.commercial,
            r.sales_mwh.industrial,
        ))?;
    }
    out.flush()?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Solar resource table
// ---------------------------------------------------------------------------

const SOLAR_HEADER: [&str; 3] = ["lat", "lon", "avg_kwh_m2_day"];

pub fn parse_solar_table(text: &str) -> Result<Vec<SolarResourceRecord>> {
    let mut reader = reader_from(text);
    check_header(reader.headers()?, &SOLAR_HEADER, "solar table")?;
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::parse(Some("solar table"), None, e.to_string()))?;
        let line = record_line(&rec);
        let (lat, lon, avg): (f64, f64, f64) = rec
            .deserialize(None)
            .map_err(|e| Error::parse(Some("solar table"), line, e.to_string()))?;
        let location = GeoPoint::new(lat, lon)
            .map_err(|e| Error::parse(Some("solar table"), line, e.to_string()))?;
        let record = SolarResourceRecord::new(location, avg)
            .map_err(|e| Error::parse(Some("solar table"), line, e.to_string()))?;
        out.push(record);
    }
    Ok(out)
}

pub fn write_solar_table<W: Write>(records: &[SolarResourceRecord], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(SOLAR_HEADER)?;
    for r in records {
        out.serialize((r.location.lat, r.location.lon, r.avg_output))?;
    }
    out.flush()?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Long-format series
// ---------------------------------------------------------------------------

const SERIES_HEADER: [&str; 3] = ["bus_id", "hour", "p_mw"];

/// Parse a long-format table of per-bus hour blocks. Every bus must
/// contribute exactly `block_len` rows with hours `0..block_len` in order.
pub fn parse_hour_blocks(text: &str, block_len: usize) -> Result<Vec<(u64, Vec<f64>)>> {
    let mut reader = reader_from(text);
    check_header(reader.headers()?, &SERIES_HEADER, "series table")?;
    let mut out: Vec<(u64, Vec<f64>)> = Vec::new();
    let mut current: Option<(u64, Vec<f64>)> = None;
    let mut seen: HashSet<u64> = HashSet::new();

    let finish = |cur: Option<(u64, Vec<f64>)>, out: &mut Vec<(u64, Vec<f64>)>| -> Result<()> {
        if let Some((id, values)) = cur {
            if values.len() != block_len {
                return Err(Error::parse(
                    Some("series table"),
                    None,
                    format!("bus {id} has {} rows, expected {block_len}", values.len()),
                ));
            }
            out.push((id, values));
        }
        Ok(())
    };

    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::parse(Some("series table"), None, e.to_string()))?;
        let line = record_line(&rec);
        let (bus_id, hour, p_mw): (u64, usize, f64) = rec
            .deserialize(None)
            .map_err(|e| Error::parse(Some("series table"), line, e.to_string()))?;
        match current.as_mut() {
            Some((id, values)) if *id == bus_id => {
                if hour != values.len() {
                    return Err(Error::parse(
                        Some("series table"),
                        line,
                        format!("bus {bus_id}: expected hour {}, got {hour}", values.len()),
                    ));
                }
                values.push(p_mw);
            }
            _ => {
                finish(current.take(), &mut out)?;
                if !seen.insert(bus_id) {
                    return Err(Error::parse(
                        Some("series table"),
                        line,
                        format!("bus {bus_id} appears in more than one block"),
                    ));
                }
                if hour != 0 {
                    return Err(Error::parse(
                        Some("series table"),
                        line,
                        format!("bus {bus_id}: first row must be hour 0, got {hour}"),
                    ));
                }
                current = Some((bus_id, vec![p_mw]));
            }
        }
    }
    finish(current, &mut out)?;
    Ok(out)
}

/// Parse a long-format series file: one full year (8760 rows) per bus.
pub fn parse_series_long(text: &str) -> Result<Vec<(u64, HourlySeries)>> {
    parse_hour_blocks(text, HOURS_PER_YEAR)?
        .into_iter()
        .map(|(id, values)| Ok((id, HourlySeries::new(format!("bus_{id}"), values)?)))
        .collect()
}

/// Write per-bus hour blocks (of any fixed length) in long format.
pub fn write_hour_blocks<'a, W, I>(blocks: I, w: W) -> Result<()>
where
    W: Write,
    I: IntoIterator<Item = (u64, &'a [f64])>,
{
    let mut out = csv::Writer::from_writer(w);
    out.write_record(SERIES_HEADER)?;
    for (bus_id, values) in blocks {
        for (hour, v) in values.iter().enumerate() {
            out.serialize((bus_id, hour, v))?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn write_series_long<'a, W, I>(series: I, w: W) -> Result<()>
where
    W: Write,
    I: IntoIterator<Item = (u64, &'a HourlySeries)>,
{
    write_hour_blocks(
        series.into_iter().map(|(id, s)| (id, s.values())),
        w,
    )
}

// ---------------------------------------------------------------------------
// Scenario output tables
// ---------------------------------------------------------------------------

const ALLOCATION_HEADER: [&str; 2] = ["bus_id", "btm_capacity_mw"];

pub fn parse_allocation_table(text: &str) -> Result<Vec<(u64, f64)>> {
    let mut reader = reader_from(text);
    check_header(reader.headers()?, &ALLOCATION_HEADER, "allocation table")?;
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::parse(Some("allocation table"), None, e.to_string()))?;
        let line = record_line(&rec);
        let row: (u64, f64) = rec
            .deserialize(None)
            .map_err(|e| Error::parse(Some("allocation table"), line, e.to_string()))?;
        out.push(row);
    }
    Ok(out)
}

pub fn write_allocation_table<W: Write>(rows: &[(u64, f64)], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(ALLOCATION_HEADER)?;
    for row in rows {
        out.serialize(row)?;
    }
    out.flush()?;
    Ok(())
}

const SYSTEM_DAY_HEADER: [&str; 3] = ["hour", "benchmark_mw", "net_mw"];

pub fn parse_system_day_table(text: &str) -> Result<Vec<(usize, f64, f64)>> {
    let mut reader = reader_from(text);
    check_header(reader.headers()?, &SYSTEM_DAY_HEADER, "system day table")?;
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::parse(Some("system day table"), None, e.to_string()))?;
        let line = record_line(&rec);
        let row: (usize, f64, f64) = rec
            .deserialize(None)
            .map_err(|e| Error::parse(Some("system day table"), line, e.to_string()))?;
        out.push(row);
    }
    Ok(out)
}

pub fn write_system_day_table<W: Write>(rows: &[(usize, f64, f64)], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(SYSTEM_DAY_HEADER)?;
    for row in rows {
        out.serialize(row)?;
    }
    out.flush()?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Prototype corpus (profile files + manifest)
// ---------------------------------------------------------------------------

/// Read one profile file: one value per line, 8760 lines.
pub fn parse_profile_series(path: &Path, label: &str) -> Result<HourlySeries> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path)?;
    let mut values = Vec::with_capacity(HOURS_PER_YEAR);
    for (i, raw) in text.lines().enumerate() {
        let raw = raw.trim();
        if raw.is_empty() {
            continue;
        }
        let v: f64 = raw.parse().map_err(|_| {
            Error::parse(Some(&name), Some(i + 1), format!("bad value \"{raw}\""))
        })?;
        values.push(v);
    }
    HourlySeries::new(label, values).map_err(|e| match e {
        Error::InvalidSeries { reason, .. } => Error::parse(Some(&name), None, reason),
        other => other,
    })
}

/// Load a prototype corpus through its JSON manifest. Profile file paths
/// are resolved relative to the manifest's directory.
pub fn parse_prototype_corpus(manifest_path: &Path) -> Result<Vec<PrototypeProfile>> {
    let text = std::fs::read_to_string(manifest_path)?;
    let entries: Vec<ManifestEntry> = serde_json::from_str(&text)?;
    if entries.is_empty() {
        log::warn!("manifest {} lists no profiles", manifest_path.display());
        return Ok(Vec::new());
    }
    let base = manifest_path.parent().unwrap_or_else(|| Path::new("."));
    let mut out = Vec::with_capacity(entries.len());
    for entry in entries {
        let file = base.join(&entry.file);
        let profile_id = Path::new(&entry.file)
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| entry.file.clone());
        let series = parse_profile_series(&file, &profile_id)?;
        let location = GeoPoint::new(entry.lat, entry.lon)?;
        out.push(PrototypeProfile::new(
            profile_id,
            entry.kind,
            entry.subtype,
            location,
            entry.region,
            series,
        )?);
    }
    Ok(out)
}

/// Write a corpus as one CSV file per profile plus `manifest.json`.
pub fn write_prototype_corpus(profiles: &[PrototypeProfile], dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut entries = Vec::with_capacity(profiles.len());
    for p in profiles {
        let file = format!("{}.csv", p.profile_id);
        let mut body = String::with_capacity(HOURS_PER_YEAR * 8);
        for v in p.series.values() {
            body.push_str(&format!("{v}\n"));
        }
        std::fs::write(dir.join(&file), body)?;
        entries.push(ManifestEntry {
            file,
            kind: p.kind,
            subtype: p.subtype.clone(),
            lat: p.location.lat,
            lon: p.location.lon,
            region: p.region.clone(),
        });
    }
    let manifest = serde_json::to_string_pretty(&entries)?;
    std::fs::write(dir.join("manifest.json"), manifest)?;
    Ok(())
}
