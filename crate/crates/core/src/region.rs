//! The fixed universe of 51 regions: the 50 states plus the District of Columbia.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegionMeta {
    pub code: &'static str,
    pub name: &'static str,
    pub fips: &'static str,
}

// Sorted by USPS code; `RegionId` ordering relies on it.
static REGIONS: [RegionMeta; 51] = [
    RegionMeta { code: "AK", name: "Alaska", fips: "02" },
    RegionMeta { code: "AL", name: "Alabama", fips: "01" },
    RegionMeta { code: "AR", name: "Arkansas", fips: "05" },
    RegionMeta { code: "AZ", name: "Arizona", fips: "04" },
    RegionMeta { code: "CA", name: "California", fips: "06" },
    RegionMeta { code: "CO", name: "Colorado", fips: "08" },
    RegionMeta { code: "CT", name: "Connecticut", fips: "09" },
    RegionMeta { code: "DC", name: "District of Columbia", fips: "11" },
    RegionMeta { code: "DE", name: "Delaware", fips: "10" },
    RegionMeta { code: "FL", name: "Florida", fips: "12" },
    RegionMeta { code: "GA", name: "Georgia", fips: "13" },
    RegionMeta { code: "HI", name: "Hawaii", fips: "15" },
    RegionMeta { code: "IA", name: "Iowa", fips: "19" },
    RegionMeta { code: "ID", name: "Idaho", fips: "16" },
    RegionMeta { code: "IL", name: "Illinois", fips: "17" },
    RegionMeta { code: "IN", name: "Indiana", fips: "18" },
    RegionMeta { code: "KS", name: "Kansas", fips: "20" },
    RegionMeta { code: "KY", name: "Kentucky", fips: "21" },
    RegionMeta { code: "LA", name: "Louisiana", fips: "22" },
    RegionMeta { code: "MA", name: "Massachusetts", fips: "25" },
    RegionMeta { code: "MD", name: "Maryland", fips: "24" },
    RegionMeta { code: "ME", name: "Maine", fips: "23" },
    RegionMeta { code: "MI", name: "Michigan", fips: "26" },
    RegionMeta { code: "MN", name: "Minnesota", fips: "27" },
    RegionMeta { code: "MO", name: "Missouri", fips: "29" },
    RegionMeta { code: "MS", name: "Mississippi", fips: "28" },
    RegionMeta { code: "MT", name: "Montana", fips: "30" },
    RegionMeta { code: "NC", name: "North Carolina", fips: "37" },
    RegionMeta { code: "ND", name: "North Dakota", fips: "38" },
    RegionMeta { code: "NE", name: "Nebraska", fips: "31" },
    RegionMeta { code: "NH", name: "New Hampshire", fips: "33" },
    RegionMeta { code: "NJ", name: "New Jersey", fips: "34" },
    RegionMeta { code: "NM", name: "New Mexico", fips: "35" },
    RegionMeta { code: "NV", name: "Nevada", fips: "32" },
    RegionMeta { code: "NY", name: "New York", fips: "36" },
    RegionMeta { code: "OH", name: "Ohio", fips: "39" },
    RegionMeta { code: "OK", name: "Oklahoma", fips: "40" },
    RegionMeta { code: "OR", name: "Oregon", fips: "41" },
    RegionMeta { code: "PA", name: "Pennsylvania", fips: "42" },
    RegionMeta { code: "RI", name: "Rhode Island", fips: "44" },
    RegionMeta { code: "SC", name: "South Carolina", fips: "45" },
    RegionMeta { code: "SD", name: "South Dakota", fips: "46" },
    RegionMeta { code: "TN", name: "Tennessee", fips: "47" },
    RegionMeta { code: "TX", name: "Texas", fips: "48" },
    RegionMeta { code: "UT", name: "Utah", fips: "49" },
    RegionMeta { code: "VA", name: "Virginia", fips: "51" },
    RegionMeta { code: "VT", name: "Vermont", fips: "50" },
    RegionMeta { code: "WA", name: "Washington", fips: "53" },
    RegionMeta { code: "WI", name: "Wisconsin", fips: "55" },
    RegionMeta { code: "WV", name: "West Virginia", fips: "54" },
    RegionMeta { code: "WY", name: "Wyoming", fips: "56" },
];

pub const REGION_COUNT: usize = 51;

/// One of the 51 USPS codes. Orders by code.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RegionId(u8);

impl RegionId {
    pub fn all() -> impl Iterator<Item = RegionId> + Clone {
        (0..REGION_COUNT as u8).map(RegionId)
    }

    pub fn from_code(code: &str) -> Result<RegionId> {
        let upper = code.trim().to_ascii_uppercase();
        REGIONS
            .binary_search_by(|m| m.code.cmp(upper.as_str()))
            .map(|i| RegionId(i as u8))
            .map_err(|_| Error::UnknownRegion(code.to_string()))
    }

    pub fn meta(self) -> &'static RegionMeta {
        &REGIONS[self.0 as usize]
    }

    pub fn code(self) -> &'static str {
        self.meta().code
    }

    pub fn name(self) -> &'static str {
        self.meta().name
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for RegionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl fmt::Debug for RegionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for RegionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RegionId::from_code(s)
    }
}

fn normalize(key: &str) -> String {
    key.chars()
        .filter(|c| !matches!(c, '.' | ','))
        .collect::<String>()
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

/// Case-insensitive lookup by USPS code, full name or two-digit FIPS code.
pub fn region_lookup(key: &str) -> Result<&'static RegionMeta> {
    let norm = normalize(key);
    if norm.is_empty() {
        return Err(Error::UnknownRegion(key.to_string()));
    }
    if norm.len() == 2 && norm.chars().all(|c| c.is_ascii_alphabetic()) {
        if let Ok(id) = RegionId::from_code(&norm) {
            return Ok(id.meta());
        }
    }
    if norm.chars().all(|c| c.is_ascii_digit()) && norm.len() <= 2 {
        let fips = format!("{norm:0>2}");
        if let Some(meta) = REGIONS.iter().find(|m| m.fips == fips) {
            return Ok(meta);
        }
    }
    if matches!(norm.as_str(), "washington dc" | "washington d c" | "d c") {
        return RegionId::from_code("DC").map(RegionId::meta);
    }
    REGIONS
        .iter()
        .find(|m| m.name.to_lowercase() == norm)
        .ok_or_else(|| Error::UnknownRegion(key.to_string()))
}

/// Resolves any accepted key form straight to a `RegionId`.
pub fn resolve_region(key: &str) -> Result<RegionId> {
    let meta = region_lookup(key)?;
    RegionId::from_code(meta.code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn table_is_sorted_and_unique() {
        assert!(REGIONS.windows(2).all(|w| w[0].code < w[1].code));
        let names: BTreeSet<_> = REGIONS.iter().map(|m| m.name).collect();
        let fips: BTreeSet<_> = REGIONS.iter().map(|m| m.fips).collect();
        assert_eq!(names.len(), 51);
        assert_eq!(fips.len(), 51);
    }

    #[test]
    fn lookup_forms() {
        let dc = region_lookup("dc").unwrap();
        assert_eq!((dc.code, dc.name, dc.fips), ("DC", "District of Columbia", "11"));
        assert_eq!(region_lookup("Idaho").unwrap().code, "ID");
        assert_eq!(region_lookup("  new   YORK ").unwrap().code, "NY");
        assert_eq!(region_lookup("49").unwrap().code, "UT");
        assert_eq!(region_lookup("1").unwrap().code, "AL");
        assert_eq!(region_lookup("Washington DC").unwrap().code, "DC");
        assert_eq!(region_lookup("Washington, D.C.").unwrap().code, "DC");
        assert_eq!(region_lookup("Washington").unwrap().code, "WA");
    }

    #[test]
    fn lookup_rejects_outsiders() {
        assert!(matches!(region_lookup("Puerto Rico"), Err(Error::UnknownRegion(_))));
        assert!(matches!(region_lookup("PR"), Err(Error::UnknownRegion(_))));
        assert!(matches!(region_lookup("72"), Err(Error::UnknownRegion(_))));
        assert!(region_lookup("").is_err());
    }

    #[test]
    fn ids_order_by_code() {
        let ak = RegionId::from_code("AK").unwrap();
        let al = RegionId::from_code("al").unwrap();
        assert!(ak < al);
        assert_eq!(RegionId::all().count(), 51);
    }
}
