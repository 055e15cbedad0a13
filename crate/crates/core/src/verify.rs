//! Structural checks on a composed chart: grouping, color linkage, shared scales and
//! row alignment. Each check returns the list of violations found.

use std::collections::BTreeMap;

use crate::layout::{LinkedLayout, Side};
use crate::region::RegionId;
use crate::scene::{ColumnKind, Geometry, Role, Scene, Shape};

fn center_y(shape: &Shape) -> Option<f64> {
    match &shape.geometry {
        Geometry::Rect(r) => Some(r.center_y()),
        Geometry::Circle { cy, .. } => Some(*cy),
        Geometry::Line { y1, y2, .. } => Some((y1 + y2) / 2.0),
        Geometry::Polygon(pts) => {
            let (lo, hi) = pts
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| (lo.min(p.y), hi.max(p.y)));
            Some((lo + hi) / 2.0)
        }
        _ => None,
    }
}

/// Group sizes sum to the ranked count, mirror about the median, and a singleton median
/// group exists exactly when the count is odd.
pub fn check_partition(layout: &LinkedLayout, group_size: usize) -> Vec<String> {
    let mut out = Vec::new();
    let sizes = &layout.plan.sizes;
    let n = layout.ranked.len();
    if sizes.iter().sum::<usize>() != n {
        out.push(format!("group sizes {sizes:?} do not sum to {n}"));
    }
    if sizes.iter().any(|s| *s == 0 || *s > group_size) {
        out.push(format!("group sizes {sizes:?} exceed {group_size} or are empty"));
    }
    if sizes.iter().rev().ne(sizes.iter()) {
        out.push(format!("group sizes {sizes:?} are not mirror-symmetric"));
    }
    match layout.plan.median_group_index {
        Some(m) if !n.is_multiple_of(2) && sizes[m] == 1 && m * 2 + 1 == sizes.len() => {}
        None if n.is_multiple_of(2) => {}
        other => out.push(format!("median group {other:?} is wrong for {n} regions")),
    }
    for (g, _) in sizes.iter().enumerate() {
        if layout.plan.side(g) == Side::Median && Some(g) != layout.plan.median_group_index {
            out.push(format!("group {g} is on the median side without being the median group"));
        }
    }
    out
}

/// For every ranked region: legend swatch, own-panel minimap fill and every glyph mark
/// share one color string. Returns the violations and the number of regions that passed.
pub fn check_color_linkage(scene: &Scene, layout: &LinkedLayout) -> (Vec<String>, usize) {
    let mut out = Vec::new();
    let mut passed = 0;
    for region in &layout.ranked {
        let panel = layout.group_of[region];
        let mine = |s: &&Shape| s.tag.region == Some(*region) && s.tag.panel == Some(panel);
        let swatch: Vec<_> = scene.with_role(Role::Swatch).filter(mine).collect();
        let map: Vec<_> = scene.with_role(Role::MapFill).filter(mine).collect();
        let marks: Vec<_> = scene.with_role(Role::Mark).filter(mine).collect();
        let before = out.len();
        if swatch.len() != 1 || map.len() != 1 {
            out.push(format!(
                "{region}: {} swatch(es), {} map fill(s) in panel {panel}",
                swatch.len(),
                map.len()
            ));
            continue;
        }
        let color = swatch[0].paint();
        if map[0].paint() != color {
            out.push(format!("{region}: map fill {:?} != swatch {:?}", map[0].paint(), color));
        }
        for m in marks {
            if m.paint() != color {
                out.push(format!(
                    "{region}: {} mark {:?} != swatch {:?}",
                    m.tag.kind.map_or("?", ColumnKind::as_str),
                    m.paint(),
                    color
                ));
            }
        }
        if out.len() == before {
            passed += 1;
        }
    }
    (out, passed)
}

/// Tick values per glyph column and panel, from the grid guides.
pub fn panel_ticks(scene: &Scene, role: Role) -> BTreeMap<usize, BTreeMap<usize, Vec<f64>>> {
    let mut out: BTreeMap<usize, BTreeMap<usize, Vec<f64>>> = BTreeMap::new();
    for s in scene.with_role(role) {
        if let (Some(c), Some(p), Some(v)) = (s.tag.column, s.tag.panel, s.tag.value) {
            out.entry(c).or_default().entry(p).or_default().push(v);
        }
    }
    out
}

/// Every panel of a glyph column draws the same tick list, for both axes; and every
/// panel of the column has a tick list at all.
pub fn check_shared_ticks(scene: &Scene, panel_count: usize) -> Vec<String> {
    let mut out = Vec::new();
    for role in [Role::GridX, Role::GridY] {
        for (column, panels) in panel_ticks(scene, role) {
            if panels.len() != panel_count {
                out.push(format!(
                    "column {column}: {} of {panel_count} panels have {} ticks",
                    panels.len(),
                    role.as_str()
                ));
            }
            let mut lists = panels.values();
            if let Some(first) = lists.next() {
                if lists.any(|l| l != first) {
                    out.push(format!("column {column}: {} ticks differ between panels", role.as_str()));
                }
            }
        }
    }
    out
}

/// Legend rows and row-based marks (dot, bar, arrow, boxplot) share a center line.
pub fn check_row_alignment(scene: &Scene, tolerance: f64) -> Vec<String> {
    let mut out = Vec::new();
    let legend: BTreeMap<RegionId, f64> = scene
        .with_role(Role::Swatch)
        .filter_map(|s| Some((s.tag.region?, center_y(s)?)))
        .collect();
    let row_kinds = [ColumnKind::Dot, ColumnKind::Bar, ColumnKind::Arrow, ColumnKind::BoxPlot];
    for s in scene.with_role(Role::Mark) {
        let (Some(region), Some(kind)) = (s.tag.region, s.tag.kind) else {
            continue;
        };
        if !row_kinds.contains(&kind) {
            continue;
        }
        if let (Some(y), Some(ly)) = (center_y(s), legend.get(&region)) {
            if (y - ly).abs() > tolerance {
                out.push(format!("{region}: {} mark at y={y}, legend at y={ly}", kind.as_str()));
            }
        }
    }
    out
}

/// Every check at once.
pub fn check_chart(scene: &Scene, layout: &LinkedLayout, group_size: usize) -> Vec<String> {
    let mut out = check_partition(layout, group_size);
    out.extend(check_color_linkage(scene, layout).0);
    out.extend(check_shared_ticks(scene, layout.panel_count()));
    out.extend(check_row_alignment(scene, 0.5));
    let bands = scene.with_role(Role::MedianBand).count();
    let expected = usize::from(layout.ranked.len() % 2 == 1);
    if bands != expected {
        out.push(format!("{bands} median bands, expected {expected}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::default_atlas;
    use crate::compose::{compose_chart, ChartSpec, ColumnSpec};
    use crate::layout::SortSpec;
    use crate::scene::Color;
    use crate::table::parse_table;

    fn chart() -> crate::compose::Composition {
        let body: String = RegionId::all()
            .map(|r| format!("{},{},{}\n", r.code(), r.index(), (r.index() * 7) % 13))
            .collect();
        let t = parse_table(&format!("state,a,b\n{body}"), "state").unwrap();
        let spec = ChartSpec::new(
            "t",
            SortSpec::descending("a"),
            vec![
                ColumnSpec::map(),
                ColumnSpec::legend(),
                ColumnSpec::new(ColumnKind::Dot, "a", &["a"]),
                ColumnSpec::new(ColumnKind::Bar, "b", &["b"]),
                ColumnSpec::new(ColumnKind::Scatter, "a vs b", &["a", "b"]),
            ],
        );
        compose_chart(&spec, &t, &default_atlas()).unwrap()
    }

    #[test]
    fn composed_chart_is_clean() {
        let c = chart();
        assert_eq!(check_chart(&c.scene, &c.layout, 5), Vec::<String>::new());
        assert_eq!(check_color_linkage(&c.scene, &c.layout).1, 51);
    }

    #[test]
    fn detects_broken_linkage() {
        let mut c = chart();
        let m = c.scene.shapes.iter_mut().find(|s| s.tag.role == Role::Mark).unwrap();
        m.style.fill = Some(Color::from("#123456"));
        let (errs, passed) = check_color_linkage(&c.scene, &c.layout);
        assert_eq!(errs.len(), 1);
        assert_eq!(passed, 50);
    }

    #[test]
    fn detects_unshared_ticks() {
        let mut c = chart();
        let g = c.scene.shapes.iter_mut().find(|s| s.tag.role == Role::GridX).unwrap();
        g.tag.value = Some(1234.5);
        assert_eq!(check_shared_ticks(&c.scene, c.layout.panel_count()).len(), 1);
    }

    #[test]
    fn detects_misaligned_rows() {
        let mut c = chart();
        let m = c
            .scene
            .shapes
            .iter_mut()
            .find(|s| s.tag.role == Role::Mark && s.tag.kind == Some(ColumnKind::Dot))
            .unwrap();
        if let Geometry::Circle { cy, .. } = &mut m.geometry {
            *cy += 1.0;
        }
        assert_eq!(check_row_alignment(&c.scene, 0.5).len(), 1);
    }
}
