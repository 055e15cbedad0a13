//! Ordering, perceptual grouping and color-slot assignment.
//!
//! Ranked regions are split at the median into two halves. An odd count puts the
//! median region in its own singleton group. Each half is cut into the fewest
//! contiguous groups of at most `group_size`, sizes differing by at most one, with the
//! larger groups toward the top and bottom of the chart. The lower half mirrors the
//! upper half, so 51 regions give `5 5 5 5 5 1 5 5 5 5 5`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::region::RegionId;
use crate::table::RegionTable;

pub const DEFAULT_GROUP_SIZE: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Direction {
    Ascending,
    #[default]
    Descending,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortSpec {
    /// A scalar column name, or `series:period`.
    pub column: String,
    pub direction: Direction,
}

impl SortSpec {
    pub fn descending(column: impl Into<String>) -> Self {
        SortSpec {
            column: column.into(),
            direction: Direction::Descending,
        }
    }

    pub fn ascending(column: impl Into<String>) -> Self {
        SortSpec {
            column: column.into(),
            direction: Direction::Ascending,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPlan {
    pub sizes: Vec<usize>,
    pub median_group_index: Option<usize>,
}

impl GroupPlan {
    pub fn group_count(&self) -> usize {
        self.sizes.len()
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Rank offset of the first region in each group.
    pub fn starts(&self) -> Vec<usize> {
        self.sizes
            .iter()
            .scan(0, |acc, s| {
                let start = *acc;
                *acc += s;
                Some(start)
            })
            .collect()
    }

    /// Which side of the median a group sits on.
    pub fn side(&self, group: usize) -> Side {
        match self.median_group_index {
            Some(m) if group == m => Side::Median,
            Some(m) if group < m => Side::Upper,
            Some(_) => Side::Lower,
            None if group < self.sizes.len() / 2 => Side::Upper,
            None => Side::Lower,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Upper,
    Median,
    Lower,
}

/// A region's color slot within its group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Color(u8),
    Median,
    /// Regions without a sort value, shown in the trailing block.
    NoData,
}

impl Slot {
    fn label(self) -> String {
        match self {
            Slot::Color(k) => k.to_string(),
            Slot::Median => "M".to_string(),
            Slot::NoData => "-".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinkedLayout {
    pub ranked: Vec<RegionId>,
    pub unranked: Vec<RegionId>,
    pub group_of: BTreeMap<RegionId, usize>,
    pub slot_of: BTreeMap<RegionId, Slot>,
    pub plan: GroupPlan,
}

impl LinkedLayout {
    pub fn group_count(&self) -> usize {
        self.plan.group_count()
    }

    /// Number of row panels: the groups plus a trailing "no data" panel when needed.
    pub fn panel_count(&self) -> usize {
        self.plan.group_count() + usize::from(!self.unranked.is_empty())
    }

    pub fn no_data_panel(&self) -> Option<usize> {
        (!self.unranked.is_empty()).then(|| self.plan.group_count())
    }

    /// Regions of a panel in display order. The index past the last group is the
    /// no-data block.
    pub fn members(&self, panel: usize) -> &[RegionId] {
        let groups = self.plan.group_count();
        if panel < groups {
            let start = self.plan.starts()[panel];
            &self.ranked[start..start + self.plan.sizes[panel]]
        } else if panel == groups {
            &self.unranked
        } else {
            &[]
        }
    }

    pub fn slot(&self, region: RegionId) -> Option<Slot> {
        self.slot_of.get(&region).copied()
    }

    /// `rank,code,group,slot` per line. Unranked regions come last with rank and group -1.
    pub fn to_canonical_string(&self) -> String {
        let mut out = String::new();
        for (rank, r) in self.ranked.iter().enumerate() {
            let _ = writeln!(
                out,
                "{rank},{},{},{}",
                r.code(),
                self.group_of[r],
                self.slot_of[r].label()
            );
        }
        for r in &self.unranked {
            let _ = writeln!(out, "-1,{},-1,{}", r.code(), Slot::NoData.label());
        }
        out
    }
}

/// Sorts regions by the spec's column. Ties break by USPS code ascending regardless of
/// direction; missing values go to `unranked` in code order.
pub fn order_regions(
    table: &RegionTable,
    spec: &SortSpec,
) -> Result<(Vec<RegionId>, Vec<RegionId>)> {
    let at = table.resolve_ref(&spec.column)?;
    let mut valued = Vec::new();
    let mut unranked = Vec::new();
    for region in table.regions() {
        match table.value(region, at) {
            Some(v) if v.is_finite() => valued.push((region, v)),
            _ => unranked.push(region),
        }
    }
    if valued.is_empty() {
        return Err(Error::EmptySort(spec.column.clone()));
    }
    valued.sort_by(|(ra, a), (rb, b)| {
        let by_value = match spec.direction {
            Direction::Ascending => a.total_cmp(b),
            Direction::Descending => b.total_cmp(a),
        };
        match by_value {
            Ordering::Equal => ra.cmp(rb),
            other => other,
        }
    });
    Ok((valued.into_iter().map(|(r, _)| r).collect(), unranked))
}

fn split_half(h: usize, group_size: usize) -> Vec<usize> {
    if h == 0 {
        return Vec::new();
    }
    let k = h.div_ceil(group_size);
    let base = h / k;
    let extra = h % k;
    // larger groups first: toward the top of the upper half
    (0..k).map(|i| base + usize::from(i < extra)).collect()
}

pub fn partition_groups(n: usize, group_size: usize) -> Result<GroupPlan> {
    if n == 0 {
        return Err(Error::EmptySort(String::from("<no ranked regions>")));
    }
    if group_size == 0 {
        return Err(Error::spec("group_size", "must be at least 1"));
    }
    let upper = split_half(n / 2, group_size);
    let mut sizes = upper.clone();
    let median_group_index = if n % 2 == 1 {
        sizes.push(1);
        Some(upper.len())
    } else {
        None
    };
    sizes.extend(upper.iter().rev());
    Ok(GroupPlan {
        sizes,
        median_group_index,
    })
}

/// Assigns group indices and slots: the k-th region of a group gets slot k, the median
/// region gets the median slot.
pub fn assign_colors(
    plan: &GroupPlan,
    ranked: &[RegionId],
) -> Result<(BTreeMap<RegionId, Slot>, BTreeMap<RegionId, usize>)> {
    if plan.total() != ranked.len() {
        return Err(Error::spec(
            "plan",
            format!("plan covers {} regions, {} ranked", plan.total(), ranked.len()),
        ));
    }
    let mut slot_of = BTreeMap::new();
    let mut group_of = BTreeMap::new();
    let mut regions = ranked.iter();
    for (g, &size) in plan.sizes.iter().enumerate() {
        for k in 0..size {
            let r = *regions.next().expect("length checked");
            let slot = if plan.median_group_index == Some(g) {
                Slot::Median
            } else {
                Slot::Color(k as u8)
            };
            slot_of.insert(r, slot);
            group_of.insert(r, g);
        }
    }
    Ok((slot_of, group_of))
}

pub fn build_layout(
    table: &RegionTable,
    spec: &SortSpec,
    group_size: usize,
) -> Result<LinkedLayout> {
    let (ranked, unranked) = order_regions(table, spec)?;
    let plan = partition_groups(ranked.len(), group_size)?;
    let (mut slot_of, group_of) = assign_colors(&plan, &ranked)?;
    for r in &unranked {
        slot_of.insert(*r, Slot::NoData);
    }
    Ok(LinkedLayout {
        ranked,
        unranked,
        group_of,
        slot_of,
        plan,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::parse_table;
    use proptest::prelude::*;

    fn id(c: &str) -> RegionId {
        RegionId::from_code(c).unwrap()
    }

    fn table(rows: &[(&str, Option<f64>)]) -> RegionTable {
        let body: String = rows
            .iter()
            .map(|(c, v)| match v {
                Some(v) => format!("{c},{v}\n"),
                None => format!("{c},NA\n"),
            })
            .collect();
        parse_table(&format!("s,v\n{body}"), "s").unwrap()
    }

    fn full_table() -> RegionTable {
        let rows: Vec<(&str, Option<f64>)> = RegionId::all()
            .map(|r| (r.code(), Some(((r.index() * 37) % 51) as f64)))
            .collect();
        table(&rows)
    }

    #[test]
    fn ordering_examples() {
        let t = table(&[("UT", Some(86.0)), ("ID", Some(85.0)), ("DC", Some(60.0))]);
        let (ranked, unranked) = order_regions(&t, &SortSpec::descending("v")).unwrap();
        assert_eq!(ranked, vec![id("UT"), id("ID"), id("DC")]);
        assert!(unranked.is_empty());

        let t = table(&[("AL", Some(5.0)), ("AK", Some(5.0))]);
        let (ranked, _) = order_regions(&t, &SortSpec::descending("v")).unwrap();
        assert_eq!(ranked, vec![id("AK"), id("AL")]);
        let (ranked, _) = order_regions(&t, &SortSpec::ascending("v")).unwrap();
        assert_eq!(ranked, vec![id("AK"), id("AL")]);
    }

    #[test]
    fn ordering_errors() {
        let t = table(&[("AL", None), ("AK", None)]);
        assert!(matches!(
            order_regions(&t, &SortSpec::descending("v")),
            Err(Error::EmptySort(_))
        ));
        assert!(matches!(
            order_regions(&t, &SortSpec::descending("w")),
            Err(Error::MissingColumn(_))
        ));
    }

    #[test]
    fn partition_examples() {
        let p = partition_groups(51, 5).unwrap();
        assert_eq!(p.sizes, vec![5, 5, 5, 5, 5, 1, 5, 5, 5, 5, 5]);
        assert_eq!(p.median_group_index, Some(5));

        let p = partition_groups(1, 5).unwrap();
        assert_eq!(p.sizes, vec![1]);
        assert_eq!(p.median_group_index, Some(0));

        let p = partition_groups(13, 5).unwrap();
        assert_eq!(p.sizes, vec![3, 3, 1, 3, 3]);
        assert_eq!(p.median_group_index, Some(2));

        let p = partition_groups(50, 5).unwrap();
        assert_eq!(p.sizes, vec![5; 10]);
        assert_eq!(p.median_group_index, None);

        // 14 per half with size 5: three groups 5,5,4, larger toward the extremes
        let p = partition_groups(29, 5).unwrap();
        assert_eq!(p.sizes, vec![5, 5, 4, 1, 4, 5, 5]);

        assert!(matches!(partition_groups(0, 5), Err(Error::EmptySort(_))));
    }

    #[test]
    fn slots_within_groups() {
        let plan = partition_groups(51, 5).unwrap();
        let ranked: Vec<RegionId> = RegionId::all().collect();
        let (slots, groups) = assign_colors(&plan, &ranked).unwrap();
        let first: Vec<Slot> = ranked[..5].iter().map(|r| slots[r]).collect();
        assert_eq!(first, (0..5).map(Slot::Color).collect::<Vec<_>>());
        assert_eq!(slots[&ranked[25]], Slot::Median);
        // seventh overall (rank index 6) sits in group 1, slot 1
        assert_eq!(groups[&ranked[6]], 1);
        assert_eq!(slots[&ranked[6]], Slot::Color(1));
    }

    #[test]
    fn layout_with_missing_sort_value() {
        let rows: Vec<(&str, Option<f64>)> = RegionId::all()
            .map(|r| {
                let v = (r.code() != "DC").then_some(r.index() as f64);
                (r.code(), v)
            })
            .collect();
        let l = build_layout(&table(&rows), &SortSpec::descending("v"), 5).unwrap();
        assert_eq!(l.ranked.len(), 50);
        assert_eq!(l.plan.sizes, vec![5; 10]);
        assert_eq!(l.plan.median_group_index, None);
        assert_eq!(l.unranked, vec![id("DC")]);
        assert_eq!(l.panel_count(), 11);
        assert_eq!(l.members(10), &[id("DC")]);
        assert!(l.to_canonical_string().ends_with("-1,DC,-1,-\n"));
    }

    #[test]
    fn full_layout_and_reversal() {
        let t = full_table();
        let d = build_layout(&t, &SortSpec::descending("v"), 5).unwrap();
        let a = build_layout(&t, &SortSpec::ascending("v"), 5).unwrap();
        assert_eq!(d.group_count(), 11);
        let mut rev = a.ranked.clone();
        rev.reverse();
        assert_eq!(d.ranked, rev);
        assert_eq!(d.members(5).len(), 1);
        assert_eq!(d.slot(d.members(5)[0]), Some(Slot::Median));
        let text = d.to_canonical_string();
        assert_eq!(text.lines().count(), 51);
        assert_eq!(text, build_layout(&t, &SortSpec::descending("v"), 5).unwrap().to_canonical_string());
    }

    #[test]
    fn sides() {
        let p = partition_groups(51, 5).unwrap();
        assert_eq!(p.side(0), Side::Upper);
        assert_eq!(p.side(5), Side::Median);
        assert_eq!(p.side(6), Side::Lower);
        let p = partition_groups(50, 5).unwrap();
        assert_eq!(p.side(4), Side::Upper);
        assert_eq!(p.side(5), Side::Lower);
    }

    proptest! {
        #[test]
        fn layout_invariants(vals in proptest::collection::vec(proptest::option::weighted(0.9, -50i32..50), 51), gs in 1usize..8) {
            let rows: Vec<(&str, Option<f64>)> = RegionId::all()
                .zip(&vals)
                .map(|(r, v)| (r.code(), v.map(f64::from)))
                .collect();
            let t = table(&rows);
            let spec = SortSpec::descending("v");
            let Ok(l) = build_layout(&t, &spec, gs) else {
                prop_assert!(vals.iter().all(Option::is_none));
                return Ok(());
            };
            // ranked and unranked partition the table
            let mut all: Vec<RegionId> = l.ranked.iter().chain(&l.unranked).copied().collect();
            all.sort();
            prop_assert_eq!(all, t.regions().collect::<Vec<_>>());
            // monotone along ranked
            let vs: Vec<f64> = l.ranked.iter().map(|r| t.get(*r, "v").unwrap().unwrap()).collect();
            prop_assert!(vs.windows(2).all(|w| w[0] >= w[1]));
            // slot bijection per non-median group
            for g in 0..l.group_count() {
                let members = l.members(g);
                if l.plan.median_group_index == Some(g) {
                    prop_assert_eq!(members.len(), 1);
                    prop_assert_eq!(l.slot(members[0]), Some(Slot::Median));
                } else {
                    let slots: Vec<Slot> = members.iter().map(|r| l.slot(*r).unwrap()).collect();
                    let expected: Vec<Slot> = (0..members.len() as u8).map(Slot::Color).collect();
                    prop_assert_eq!(slots, expected);
                }
            }
            // determinism
            prop_assert_eq!(l.to_canonical_string(), build_layout(&t, &spec, gs).unwrap().to_canonical_string());
        }
    }
}
