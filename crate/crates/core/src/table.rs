//! Region-indexed tables: CSV ingestion, series binding and extents.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::region::{resolve_region, RegionId};

#[derive(Debug, Clone, PartialEq)]
pub enum ColumnKind {
    Scalar,
    /// One value slot per period label, in display order.
    Series { periods: Vec<String> },
    /// A variable-length sample list per region (e.g. county values for a boxplot).
    Samples,
}

impl ColumnKind {
    pub fn label(&self) -> &'static str {
        match self {
            ColumnKind::Scalar => "scalar",
            ColumnKind::Series { .. } => "series",
            ColumnKind::Samples => "samples",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub kind: ColumnKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Scalar(Option<f64>),
    Series(Vec<Option<f64>>),
    /// Empty means missing.
    Samples(Vec<f64>),
}

impl Cell {
    fn fits(&self, kind: &ColumnKind) -> bool {
        match (self, kind) {
            (Cell::Scalar(_), ColumnKind::Scalar) | (Cell::Samples(_), ColumnKind::Samples) => {
                true
            }
            (Cell::Series(v), ColumnKind::Series { periods }) => v.len() == periods.len(),
            _ => false,
        }
    }

    fn is_missing(&self) -> bool {
        match self {
            Cell::Scalar(v) => v.is_none(),
            Cell::Series(v) => v.iter().any(Option::is_none),
            Cell::Samples(v) => v.is_empty(),
        }
    }

    fn values(&self) -> Box<dyn Iterator<Item = f64> + '_> {
        match self {
            Cell::Scalar(v) => Box::new(v.iter().copied()),
            Cell::Series(v) => Box::new(v.iter().flatten().copied()),
            Cell::Samples(v) => Box::new(v.iter().copied()),
        }
    }
}

/// A resolved reference to a scalar value: a scalar column, or one period of a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValueRef {
    column: usize,
    period: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RegionTable {
    columns: Vec<Column>,
    rows: BTreeMap<RegionId, Vec<Cell>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub missing_regions: Vec<RegionId>,
    pub unknown_keys: Vec<String>,
    pub missing_cells: Vec<(RegionId, String)>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.missing_regions.is_empty()
            && self.unknown_keys.is_empty()
            && self.missing_cells.is_empty()
    }
}

impl RegionTable {
    pub fn new(columns: Vec<Column>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for c in &columns {
            if !seen.insert(c.name.as_str()) {
                return Err(Error::NameClash(c.name.clone()));
            }
        }
        Ok(RegionTable {
            columns,
            rows: BTreeMap::new(),
        })
    }

    pub fn insert_row(&mut self, region: RegionId, cells: Vec<Cell>) -> Result<()> {
        if self.rows.contains_key(&region) {
            return Err(Error::DuplicateRegion(region));
        }
        if cells.len() != self.columns.len() {
            return Err(Error::spec(
                region.code(),
                format!("{} cells for {} columns", cells.len(), self.columns.len()),
            ));
        }
        for (cell, column) in cells.iter().zip(&self.columns) {
            if !cell.fits(&column.kind) {
                return Err(Error::WrongKind {
                    column: column.name.clone(),
                    expected: column.kind.label(),
                    found: "a mismatched cell",
                });
            }
        }
        self.rows.insert(region, cells);
        Ok(())
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Regions present, in USPS-code order.
    pub fn regions(&self) -> impl Iterator<Item = RegionId> + '_ {
        self.rows.keys().copied()
    }

    pub fn contains(&self, region: RegionId) -> bool {
        self.rows.contains_key(&region)
    }

    pub fn column(&self, name: &str) -> Result<(usize, &Column)> {
        self.columns
            .iter()
            .enumerate()
            .find(|(_, c)| c.name == name)
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    }

    pub fn cell(&self, region: RegionId, column: usize) -> Option<&Cell> {
        self.rows.get(&region).and_then(|r| r.get(column))
    }

    /// Resolves `name` to a scalar column, or `series:period` to one period of a series.
    pub fn resolve_ref(&self, reference: &str) -> Result<ValueRef> {
        if let Ok((idx, col)) = self.column(reference) {
            return match col.kind {
                ColumnKind::Scalar => Ok(ValueRef {
                    column: idx,
                    period: None,
                }),
                _ => Err(Error::WrongKind {
                    column: reference.to_string(),
                    expected: "scalar",
                    found: col.kind.label(),
                }),
            };
        }
        let (name, period) = reference
            .rsplit_once(':')
            .ok_or_else(|| Error::MissingColumn(reference.to_string()))?;
        let (idx, col) = self.column(name)?;
        match &col.kind {
            ColumnKind::Series { periods } => {
                let p = periods
                    .iter()
                    .position(|p| p == period)
                    .ok_or_else(|| Error::MissingColumn(reference.to_string()))?;
                Ok(ValueRef {
                    column: idx,
                    period: Some(p),
                })
            }
            other => Err(Error::WrongKind {
                column: name.to_string(),
                expected: "series",
                found: other.label(),
            }),
        }
    }

    pub fn value(&self, region: RegionId, at: ValueRef) -> Option<f64> {
        match (self.cell(region, at.column)?, at.period) {
            (Cell::Scalar(v), None) => *v,
            (Cell::Series(v), Some(p)) => v.get(p).copied().flatten(),
            _ => None,
        }
    }

    /// Convenience: the value behind `reference` for `region`.
    pub fn get(&self, region: RegionId, reference: &str) -> Result<Option<f64>> {
        let at = self.resolve_ref(reference)?;
        Ok(self.value(region, at))
    }

    pub fn series(&self, region: RegionId, column: &str) -> Result<Option<&[Option<f64>]>> {
        let (idx, col) = self.column(column)?;
        if !matches!(col.kind, ColumnKind::Series { .. }) {
            return Err(Error::WrongKind {
                column: column.to_string(),
                expected: "series",
                found: col.kind.label(),
            });
        }
        Ok(match self.cell(region, idx) {
            Some(Cell::Series(v)) => Some(v.as_slice()),
            _ => None,
        })
    }

    pub fn periods(&self, column: &str) -> Result<&[String]> {
        match &self.column(column)?.1.kind {
            ColumnKind::Series { periods } => Ok(periods),
            other => Err(Error::WrongKind {
                column: column.to_string(),
                expected: "series",
                found: other.label(),
            }),
        }
    }

    pub fn samples(&self, region: RegionId, column: &str) -> Result<Option<&[f64]>> {
        let (idx, col) = self.column(column)?;
        if col.kind != ColumnKind::Samples {
            return Err(Error::WrongKind {
                column: column.to_string(),
                expected: "samples",
                found: col.kind.label(),
            });
        }
        Ok(match self.cell(region, idx) {
            Some(Cell::Samples(v)) if !v.is_empty() => Some(v.as_slice()),
            _ => None,
        })
    }

    fn push_column(&mut self, column: Column, mut fill: impl FnMut(RegionId) -> Cell) -> Result<()> {
        if self.columns.iter().any(|c| c.name == column.name) {
            return Err(Error::NameClash(column.name));
        }
        for (region, row) in self.rows.iter_mut() {
            row.push(fill(*region));
        }
        self.columns.push(column);
        Ok(())
    }

    /// Appends a scalar column; regions absent from `values` get a missing cell.
    pub fn with_scalar_column(
        mut self,
        name: &str,
        values: &BTreeMap<RegionId, f64>,
    ) -> Result<Self> {
        let column = Column {
            name: name.to_string(),
            kind: ColumnKind::Scalar,
        };
        self.push_column(column, |r| Cell::Scalar(values.get(&r).copied()))?;
        Ok(self)
    }

    /// Appends a sample-list column; regions absent from `values` get an empty (missing) list.
    pub fn with_samples_column(
        mut self,
        name: &str,
        values: &BTreeMap<RegionId, Vec<f64>>,
    ) -> Result<Self> {
        let column = Column {
            name: name.to_string(),
            kind: ColumnKind::Samples,
        };
        self.push_column(column, |r| Cell::Samples(values.get(&r).cloned().unwrap_or_default()))?;
        Ok(self)
    }

    /// Outer join on region: all columns of `other` are appended. Regions present on only one
    /// side get missing cells for the other side's columns.
    pub fn join(mut self, other: &RegionTable) -> Result<Self> {
        for c in &other.columns {
            if self.columns.iter().any(|mine| mine.name == c.name) {
                return Err(Error::NameClash(c.name.clone()));
            }
        }
        let empty_mine: Vec<Cell> = self.columns.iter().map(missing_cell).collect();
        for region in other.rows.keys() {
            self.rows.entry(*region).or_insert_with(|| empty_mine.clone());
        }
        let empty_theirs: Vec<Cell> = other.columns.iter().map(missing_cell).collect();
        for (region, row) in self.rows.iter_mut() {
            let extra = other.rows.get(region).unwrap_or(&empty_theirs);
            row.extend(extra.iter().cloned());
        }
        self.columns.extend(other.columns.iter().cloned());
        Ok(self)
    }

    /// Writes the canonical CSV form: LF line endings, minimal quoting, rows in code order,
    /// missing cells as `NA`. Series columns are flattened to `name:period` headers.
    pub fn to_csv(&self, region_column: &str) -> Result<String> {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let mut header = vec![region_column.to_string()];
        for c in &self.columns {
            match &c.kind {
                ColumnKind::Scalar => header.push(c.name.clone()),
                ColumnKind::Series { periods } => {
                    header.extend(periods.iter().map(|p| format!("{}:{}", c.name, p)))
                }
                ColumnKind::Samples => {
                    return Err(Error::WrongKind {
                        column: c.name.clone(),
                        expected: "scalar or series",
                        found: "samples",
                    })
                }
            }
        }
        writer.write_record(&header)?;
        for (region, row) in &self.rows {
            let mut record = vec![region.code().to_string()];
            for cell in row {
                match cell {
                    Cell::Scalar(v) => record.push(format_cell(*v)),
                    Cell::Series(vs) => record.extend(vs.iter().map(|v| format_cell(*v))),
                    Cell::Samples(_) => unreachable!("rejected above"),
                }
            }
            writer.write_record(&record)?;
        }
        let bytes = writer.into_inner().map_err(|e| Error::Csv(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Csv(e.to_string()))
    }
}

fn missing_cell(column: &Column) -> Cell {
    match &column.kind {
        ColumnKind::Scalar => Cell::Scalar(None),
        ColumnKind::Series { periods } => Cell::Series(vec![None; periods.len()]),
        ColumnKind::Samples => Cell::Samples(Vec::new()),
    }
}

fn format_cell(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x}"),
        None => "NA".to_string(),
    }
}

/// Parses one numeric cell. Empty or `NA` is missing; a `%` suffix and comma thousands
/// separators are stripped. Only plain decimal notation is accepted.
pub fn parse_number(text: &str) -> Option<Option<f64>> {
    let t = text.trim();
    if t.is_empty() || t.eq_ignore_ascii_case("na") {
        return Some(None);
    }
    let t = t.strip_suffix('%').unwrap_or(t).trim_end();
    let cleaned: String = t.chars().filter(|c| *c != ',').collect();
    let body = cleaned
        .strip_prefix(['+', '-'])
        .unwrap_or(cleaned.as_str());
    let mut digits = 0;
    let mut dots = 0;
    for c in body.chars() {
        match c {
            '0'..='9' => digits += 1,
            '.' => dots += 1,
            _ => return None,
        }
    }
    if digits == 0 || dots > 1 {
        return None;
    }
    cleaned.parse::<f64>().ok().map(Some)
}

fn reader(csv_text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(csv_text.as_bytes())
}

fn header_index(headers: &csv::StringRecord, name: &str) -> Result<usize> {
    headers
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| Error::MissingColumn(name.to_string()))
}

/// Parses region-indexed CSV. Every non-region header becomes a scalar column.
pub fn parse_table(csv_text: &str, region_column: &str) -> Result<RegionTable> {
    let text = csv_text.strip_prefix('\u{feff}').unwrap_or(csv_text);
    let mut rdr = reader(text);
    let headers = rdr.headers()?.clone();
    let key_idx = header_index(&headers, region_column)?;
    let value_idx: Vec<usize> = (0..headers.len()).filter(|i| *i != key_idx).collect();
    let columns = value_idx
        .iter()
        .map(|i| Column {
            name: headers[*i].to_string(),
            kind: ColumnKind::Scalar,
        })
        .collect();
    let mut table = RegionTable::new(columns)?;
    for (row_no, record) in rdr.records().enumerate() {
        let record = record?;
        let region = resolve_region(&record[key_idx])?;
        let mut cells = Vec::with_capacity(value_idx.len());
        for &i in &value_idx {
            let text = &record[i];
            let value = parse_number(text).ok_or_else(|| Error::CellParse {
                row: row_no + 1,
                column: headers[i].to_string(),
                text: text.to_string(),
            })?;
            cells.push(Cell::Scalar(value));
        }
        table.insert_row(region, cells)?;
    }
    Ok(table)
}

/// Reads long-format CSV (one row per sample, e.g. one per county) into per-region lists.
/// Missing values are skipped. Sample order follows file order.
pub fn parse_samples(
    csv_text: &str,
    region_column: &str,
    value_column: &str,
) -> Result<BTreeMap<RegionId, Vec<f64>>> {
    let text = csv_text.strip_prefix('\u{feff}').unwrap_or(csv_text);
    let mut rdr = reader(text);
    let headers = rdr.headers()?.clone();
    let key_idx = header_index(&headers, region_column)?;
    let val_idx = header_index(&headers, value_column)?;
    let mut out: BTreeMap<RegionId, Vec<f64>> = BTreeMap::new();
    for (row_no, record) in rdr.records().enumerate() {
        let record = record?;
        let region = resolve_region(&record[key_idx])?;
        let value = parse_number(&record[val_idx]).ok_or_else(|| Error::CellParse {
            row: row_no + 1,
            column: value_column.to_string(),
            text: record[val_idx].to_string(),
        })?;
        let entry = out.entry(region).or_default();
        if let Some(v) = value {
            entry.push(v);
        }
    }
    Ok(out)
}

/// Replaces the named scalar columns with one series column whose periods are the
/// column names, in the given order. The series sits where the first bound column was.
pub fn bind_series(
    table: &RegionTable,
    column_names: &[&str],
    series_name: &str,
) -> Result<RegionTable> {
    if column_names.is_empty() {
        return Err(Error::EmptyBinding);
    }
    let mut picked = Vec::with_capacity(column_names.len());
    for name in column_names {
        let (idx, col) = table.column(name)?;
        if col.kind != ColumnKind::Scalar {
            return Err(Error::WrongKind {
                column: name.to_string(),
                expected: "scalar",
                found: col.kind.label(),
            });
        }
        if picked.contains(&idx) {
            return Err(Error::NameClash(name.to_string()));
        }
        picked.push(idx);
    }
    if table
        .columns
        .iter()
        .enumerate()
        .any(|(i, c)| c.name == series_name && !picked.contains(&i))
    {
        return Err(Error::NameClash(series_name.to_string()));
    }
    let anchor = *picked.iter().min().expect("non-empty");
    let mut columns = Vec::new();
    for (i, c) in table.columns.iter().enumerate() {
        if i == anchor {
            columns.push(Column {
                name: series_name.to_string(),
                kind: ColumnKind::Series {
                    periods: column_names.iter().map(|s| s.to_string()).collect(),
                },
            });
        } else if !picked.contains(&i) {
            columns.push(c.clone());
        }
    }
    let mut out = RegionTable::new(columns)?;
    for (region, row) in &table.rows {
        let mut cells = Vec::new();
        for (i, cell) in row.iter().enumerate() {
            if i == anchor {
                let values = picked
                    .iter()
                    .map(|&p| match &row[p] {
                        Cell::Scalar(v) => *v,
                        _ => unreachable!("kinds checked above"),
                    })
                    .collect();
                cells.push(Cell::Series(values));
            } else if !picked.contains(&i) {
                cells.push(cell.clone());
            }
        }
        out.insert_row(*region, cells)?;
    }
    Ok(out)
}

pub fn validate_regions(table: &RegionTable) -> ValidationReport {
    let missing_regions = RegionId::all().filter(|r| !table.contains(*r)).collect();
    let mut missing_cells = Vec::new();
    for (region, row) in &table.rows {
        for (cell, column) in row.iter().zip(&table.columns) {
            if cell.is_missing() {
                missing_cells.push((*region, column.name.clone()));
            }
        }
    }
    missing_cells.sort();
    missing_cells.dedup();
    ValidationReport {
        missing_regions,
        unknown_keys: Vec::new(),
        missing_cells,
    }
}

/// Min and max over all non-missing values of a column (all periods of a series, all
/// samples of a sample list). `series:period` references restrict to that period.
pub fn column_extent(table: &RegionTable, column: &str) -> Result<(f64, f64)> {
    let values: Vec<f64> = match table.column(column) {
        Ok((idx, _)) => table
            .rows
            .values()
            .flat_map(|row| row[idx].values())
            .collect(),
        Err(_) => {
            let at = table.resolve_ref(column)?;
            table.regions().filter_map(|r| table.value(r, at)).collect()
        }
    };
    extent_of(values.iter().copied()).ok_or_else(|| Error::EmptyColumn(column.to_string()))
}

pub(crate) fn extent_of(values: impl IntoIterator<Item = f64>) -> Option<(f64, f64)> {
    values.into_iter().fold(None, |acc, v| match acc {
        None => Some((v, v)),
        Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn id(code: &str) -> RegionId {
        RegionId::from_code(code).unwrap()
    }

    #[test]
    fn parses_two_rows() {
        let t = parse_table("state,rate\nUT,86.4\nID,85.1\n", "state").unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.columns().len(), 1);
        assert_eq!(t.get(id("UT"), "rate").unwrap(), Some(86.4));
    }

    #[test]
    fn bad_cell_is_reported() {
        let err = parse_table("state,rate\nWashington DC,abc\n", "state").unwrap_err();
        assert_eq!(
            err,
            Error::CellParse {
                row: 1,
                column: "rate".into(),
                text: "abc".into()
            }
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_table("state,rate\nUT,1\nutah,2\n", "state"),
            Err(Error::DuplicateRegion(_))
        ));
        assert!(matches!(
            parse_table("st,rate\nUT,1\n", "state"),
            Err(Error::MissingColumn(_))
        ));
        assert!(matches!(
            parse_table("state,rate\nPR,1\n", "state"),
            Err(Error::UnknownRegion(_))
        ));
    }

    #[test]
    fn number_formats() {
        assert_eq!(parse_number("86.4%"), Some(Some(86.4)));
        assert_eq!(parse_number("1,234,567"), Some(Some(1234567.0)));
        assert_eq!(parse_number("-3.5"), Some(Some(-3.5)));
        assert_eq!(parse_number("+.5"), Some(Some(0.5)));
        assert_eq!(parse_number(" NA "), Some(None));
        assert_eq!(parse_number(""), Some(None));
        assert_eq!(parse_number("1e5"), None);
        assert_eq!(parse_number("1.2.3"), None);
        assert_eq!(parse_number("-"), None);
        assert_eq!(parse_number("12 %"), Some(Some(12.0)));
    }

    #[test]
    fn crlf_quotes_and_full_names() {
        let csv = "\"state\",\"rate, pct\"\r\n\"New York\",\"1,200\"\r\nIdaho,NA\r\n";
        let t = parse_table(csv, "state").unwrap();
        assert_eq!(t.get(id("NY"), "rate, pct").unwrap(), Some(1200.0));
        assert_eq!(t.get(id("ID"), "rate, pct").unwrap(), None);
    }

    #[test]
    fn binding() {
        let t = parse_table("state,2010,x,2011\nUT,1,9,2\nID,3,8,NA\n", "state").unwrap();
        let b = bind_series(&t, &["2010", "2011"], "rr").unwrap();
        assert_eq!(b.columns().len(), 2);
        assert_eq!(b.columns()[0].name, "rr");
        assert_eq!(b.series(id("ID"), "rr").unwrap().unwrap(), &[Some(3.0), None]);
        assert_eq!(b.get(id("UT"), "rr:2011").unwrap(), Some(2.0));
        assert_eq!(bind_series(&t, &[], "rr"), Err(Error::EmptyBinding));
        assert_eq!(
            bind_series(&t, &["2010", "nope"], "rr"),
            Err(Error::MissingColumn("nope".into()))
        );
        assert_eq!(
            bind_series(&t, &["2010"], "x"),
            Err(Error::NameClash("x".into()))
        );
        // rebinding onto one of the replaced names is fine
        assert!(bind_series(&t, &["2010", "2011"], "2010").is_ok());
    }

    #[test]
    fn validation_report() {
        let all: String = RegionId::all()
            .map(|r| format!("{},1\n", r.code()))
            .collect();
        let t = parse_table(&format!("s,v\n{all}"), "s").unwrap();
        assert!(validate_regions(&t).is_clean());

        let no_dc: String = RegionId::all()
            .filter(|r| r.code() != "DC")
            .map(|r| format!("{},NA\n", r.code()))
            .collect();
        let t = parse_table(&format!("s,v\n{no_dc}"), "s").unwrap();
        let rep = validate_regions(&t);
        assert_eq!(rep.missing_regions, vec![id("DC")]);
        assert!(rep.unknown_keys.is_empty());
        assert_eq!(rep.missing_cells.len(), 50);
        assert!(rep.missing_cells.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn extents() {
        let t = parse_table("s,v,w\nAL,3,NA\nAK,-1,NA\nAZ,7,5\n", "s").unwrap();
        assert_eq!(column_extent(&t, "v").unwrap(), (-1.0, 7.0));
        assert_eq!(column_extent(&t, "w").unwrap(), (5.0, 5.0));
        let t2 = parse_table("s,w\nAL,NA\n", "s").unwrap();
        assert_eq!(column_extent(&t2, "w"), Err(Error::EmptyColumn("w".into())));
        let b = bind_series(&t, &["v", "w"], "s").unwrap();
        assert_eq!(column_extent(&b, "s").unwrap(), (-1.0, 7.0));
        assert_eq!(column_extent(&b, "s:w").unwrap(), (5.0, 5.0));
    }

    #[test]
    fn join_and_samples() {
        let a = parse_table("s,v\nAL,1\nAK,2\n", "s").unwrap();
        let b = parse_table("s,w\nAL,5\nAZ,6\n", "s").unwrap();
        let j = a.clone().join(&b).unwrap();
        assert_eq!(j.len(), 3);
        assert_eq!(j.get(id("AK"), "w").unwrap(), None);
        assert_eq!(j.get(id("AZ"), "v").unwrap(), None);
        assert_eq!(j.get(id("AZ"), "w").unwrap(), Some(6.0));
        assert!(matches!(a.clone().join(&a), Err(Error::NameClash(_))));

        let samples = parse_samples("st,x\nAL,1\nAL,2\nAK,NA\n", "st", "x").unwrap();
        let s = a.with_samples_column("c", &samples).unwrap();
        assert_eq!(s.samples(id("AL"), "c").unwrap().unwrap(), &[1.0, 2.0]);
        assert_eq!(s.samples(id("AK"), "c").unwrap(), None);
    }

    fn arb_value() -> impl Strategy<Value = Option<f64>> {
        prop_oneof![
            1 => Just(None),
            6 => (-1.0e9..1.0e9f64).prop_map(Some),
            2 => (-1000i64..1000).prop_map(|v| Some(v as f64 / 8.0)),
        ]
    }

    proptest! {
        #[test]
        fn csv_round_trip(
            rows in proptest::collection::btree_map(0u8..51, proptest::collection::vec(arb_value(), 3), 1..51)
        ) {
            let columns = ["a", "b b", "c,\"q\""]
                .iter()
                .map(|n| Column { name: n.to_string(), kind: ColumnKind::Scalar })
                .collect();
            let mut t = RegionTable::new(columns).unwrap();
            let ids: Vec<RegionId> = RegionId::all().collect();
            for (i, vals) in &rows {
                t.insert_row(ids[*i as usize], vals.iter().map(|v| Cell::Scalar(*v)).collect()).unwrap();
            }
            let text = t.to_csv("region").unwrap();
            let back = parse_table(&text, "region").unwrap();
            prop_assert_eq!(back, t);
        }

        #[test]
        fn extent_bounds_every_value(vals in proptest::collection::vec(arb_value(), 1..51)) {
            let body: String = vals.iter().zip(RegionId::all())
                .map(|(v, r)| format!("{},{}\n", r.code(), format_cell(*v)))
                .collect();
            let t = parse_table(&format!("s,v\n{body}"), "s").unwrap();
            match column_extent(&t, "v") {
                Ok((lo, hi)) => {
                    for v in vals.iter().flatten() {
                        prop_assert!(lo <= *v && *v <= hi);
                    }
                }
                Err(e) => {
                    prop_assert!(vals.iter().all(Option::is_none));
                    prop_assert_eq!(e, Error::EmptyColumn("v".into()));
                }
            }
        }

        #[test]
        fn binding_preserves_values(vals in proptest::collection::vec((arb_value(), arb_value()), 1..51)) {
            let body: String = vals.iter().zip(RegionId::all())
                .map(|((a, b), r)| format!("{},{},{}\n", r.code(), format_cell(*a), format_cell(*b)))
                .collect();
            let t = parse_table(&format!("s,p,q\n{body}"), "s").unwrap();
            let b = bind_series(&t, &["q", "p"], "z").unwrap();
            for ((a, bv), r) in vals.iter().zip(RegionId::all()) {
                let s = b.series(r, "z").unwrap().unwrap();
                prop_assert_eq!(s, &[*bv, *a][..]);
            }
        }
    }
}
