//! Readers for the bundled snapshots and for config-described data.

use std::fs;
use std::path::{Path, PathBuf};

use micromap::table::{bind_series, parse_samples, parse_table, validate_regions, RegionTable};
use micromap::RegionId;
use thiserror::Error;

use crate::config::DataConfig;

#[derive(Debug, Error)]
pub enum SnapshotError {
    #[error("cannot read {}: {source}", file.display())]
    Missing {
        file: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {message}", file.display())]
    Malformed { file: PathBuf, message: String },
}

impl SnapshotError {
    fn malformed(file: &Path, message: impl ToString) -> Self {
        SnapshotError::Malformed {
            file: file.to_path_buf(),
            message: message.to_string(),
        }
    }
}

pub fn read(file: &Path) -> Result<String, SnapshotError> {
    fs::read_to_string(file).map_err(|source| SnapshotError::Missing {
        file: file.to_path_buf(),
        source,
    })
}

fn require_all(table: &RegionTable, file: &Path) -> Result<(), SnapshotError> {
    let report = validate_regions(table);
    if report.missing_regions.is_empty() {
        Ok(())
    } else {
        let codes: Vec<&str> = report.missing_regions.iter().map(|r| r.code()).collect();
        Err(SnapshotError::malformed(file, format!("no rows for {}", codes.join(", "))))
    }
}

pub const ACS_FILE: &str = "acs/household_response_rates.csv";
pub const QCEW_FILE: &str = "qcew/leisure_hospitality_oty.csv";
pub const ERS_STATE_FILE: &str = "ers/state_indicators.csv";
pub const ERS_COUNTY_FILE: &str = "ers/county_low_access_change.csv";
pub const PEW_FILE: &str = "pew/small_government.csv";

pub const ACS_YEARS: [&str; 13] = [
    "2010", "2011", "2012", "2013", "2014", "2015", "2016", "2017", "2018", "2019", "2020", "2021",
    "2022",
];
pub const QCEW_QUARTERS: [&str; 10] = [
    "2019Q4", "2020Q1", "2020Q2", "2020Q3", "2020Q4", "2021Q1", "2021Q2", "2021Q3", "2021Q4",
    "2022Q1",
];

/// Response rates: series `response` (2010..2022), scalar `response_2022`, and
/// `decline` = 2010 minus 2022 in percentage points.
pub fn acs_adapter(dir: &Path) -> Result<RegionTable, SnapshotError> {
    let file = dir.join(ACS_FILE);
    let bad = |e: micromap::Error| SnapshotError::malformed(&file, e);
    let raw = parse_table(&read(&file)?, "State").map_err(bad)?;
    require_all(&raw, &file)?;
    let mut latest = std::collections::BTreeMap::new();
    let mut decline = std::collections::BTreeMap::new();
    for r in raw.regions() {
        let first = raw.get(r, "2010").map_err(bad)?;
        let last = raw.get(r, "2022").map_err(bad)?;
        if let Some(v) = last {
            latest.insert(r, v);
        }
        if let (Some(a), Some(b)) = (first, last) {
            decline.insert(r, a - b);
        }
    }
    let table = raw
        .with_scalar_column("response_2022", &latest)
        .and_then(|t| t.with_scalar_column("decline", &decline))
        .map_err(bad)?;
    bind_series(&table, &ACS_YEARS, "response").map_err(bad)
}

/// Leisure and hospitality over-the-year change: series `oty` (2019Q4..2022Q1) and
/// scalar `oty_2020Q1`. Arrow columns bind `oty:2020Q1` and `oty:2022Q1`.
pub fn qcew_adapter(dir: &Path) -> Result<RegionTable, SnapshotError> {
    let file = dir.join(QCEW_FILE);
    let bad = |e: micromap::Error| SnapshotError::malformed(&file, e);
    let text = read(&file)?;
    // area titles read "<State> -- Statewide"; rewrite them to bare names
    let mut rdr = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| SnapshotError::malformed(&file, e))?.clone();
    let title = headers
        .iter()
        .position(|h| h == "area_title")
        .ok_or_else(|| SnapshotError::malformed(&file, "no area_title column"))?;
    let mut out = csv::Writer::from_writer(Vec::new());
    let keep: Vec<usize> = (0..headers.len()).filter(|i| headers[*i].ne("area_fips")).collect();
    let rename = |i: usize, h: &str| if i == title { "State".to_string() } else { h.to_string() };
    let write_err = |e: csv::Error| SnapshotError::malformed(&file, e);
    out.write_record(keep.iter().map(|i| rename(*i, &headers[*i])))
        .map_err(write_err)?;
    for rec in rdr.records() {
        let rec = rec.map_err(|e| SnapshotError::malformed(&file, e))?;
        let fields = keep.iter().map(|i| {
            let v = &rec[*i];
            if *i == title {
                v.trim_end_matches(" -- Statewide").trim().to_string()
            } else {
                v.to_string()
            }
        });
        out.write_record(fields).map_err(write_err)?;
    }
    let bytes = out.into_inner().map_err(|e| SnapshotError::malformed(&file, e))?;
    let cleaned = String::from_utf8(bytes).map_err(|e| SnapshotError::malformed(&file, e))?;
    let raw = parse_table(&cleaned, "State").map_err(bad)?;
    require_all(&raw, &file)?;
    let q1 = raw
        .regions()
        .filter_map(|r| Some((r, raw.get(r, "2020Q1").ok()??)))
        .collect();
    let table = raw.with_scalar_column("oty_2020Q1", &q1).map_err(bad)?;
    bind_series(&table, &QCEW_QUARTERS, "oty").map_err(bad)
}

/// Food environment indicators by state plus the county low-access changes as the
/// sample column `county_low_access_change`.
pub fn ers_adapter(dir: &Path) -> Result<RegionTable, SnapshotError> {
    let file = dir.join(ERS_STATE_FILE);
    let table = parse_table(&read(&file)?, "State").map_err(|e| SnapshotError::malformed(&file, e))?;
    require_all(&table, &file)?;
    for col in ["PCH_SNAP_12_17", "CH_FOODINSEC_14_17", "FOODINSEC_15_17", "PCT_LACCESS_HHNV15"] {
        table.column(col).map_err(|e| SnapshotError::malformed(&file, e))?;
    }
    let county = dir.join(ERS_COUNTY_FILE);
    let samples = parse_samples(&read(&county)?, "State", "PCH_LACCESS_HHNV_10_15")
        .map_err(|e| SnapshotError::malformed(&county, e))?;
    if let Some(r) = RegionId::all().find(|r| samples.get(r).is_none_or(Vec::is_empty)) {
        return Err(SnapshotError::malformed(&county, format!("no counties for {r}")));
    }
    table
        .with_samples_column("county_low_access_change", &samples)
        .map_err(|e| SnapshotError::malformed(&county, e))
}

/// The optional Pew column, joined onto a table when the file exists.
pub fn pew_table(dir: &Path) -> Result<Option<RegionTable>, SnapshotError> {
    let file = dir.join(PEW_FILE);
    if !file.exists() {
        return Ok(None);
    }
    let t = parse_table(&read(&file)?, "State").map_err(|e| SnapshotError::malformed(&file, e))?;
    t.column("pro_small_government")
        .map_err(|e| SnapshotError::malformed(&file, e))?;
    Ok(Some(t))
}

/// Loads the table a config describes: main file, joins, series bindings, samples.
pub fn load_config_data(data: &DataConfig) -> Result<RegionTable, SnapshotError> {
    let mut table = parse_table(&read(&data.path)?, &data.region_column)
        .map_err(|e| SnapshotError::malformed(&data.path, e))?;
    for j in &data.join {
        let other = parse_table(&read(&j.path)?, &j.region_column)
            .map_err(|e| SnapshotError::malformed(&j.path, e))?;
        table = table
            .join(&other)
            .map_err(|e| SnapshotError::malformed(&j.path, e))?;
    }
    for s in &data.series {
        let cols: Vec<&str> = s.columns.iter().map(String::as_str).collect();
        table = bind_series(&table, &cols, &s.name)
            .map_err(|e| SnapshotError::malformed(&data.path, format!("series {:?}: {e}", s.name)))?;
    }
    for s in &data.samples {
        let samples = parse_samples(&read(&s.path)?, &s.region_column, &s.value_column)
            .map_err(|e| SnapshotError::malformed(&s.path, e))?;
        table = table
            .with_samples_column(&s.name, &samples)
            .map_err(|e| SnapshotError::malformed(&s.path, e))?;
    }
    Ok(table)
}
