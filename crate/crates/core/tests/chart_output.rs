use std::collections::BTreeMap;

use micromap::atlas::{default_atlas, MapMode};
use micromap::compose::{compose_chart, ChartSpec, ColumnOptions, ColumnSpec};
use micromap::layout::SortSpec;
use micromap::scene::{ColumnKind, Geometry, Role};
use micromap::svg::{emit_svg, SvgOptions};
use micromap::table::{bind_series, parse_table, RegionTable};
use micromap::verify::check_chart;
use micromap::RegionId;
use proptest::prelude::*;

fn table(seed: u64) -> RegionTable {
    let mut csv = String::from("state,a,b,y1,y2,y3,y4\n");
    for r in RegionId::all() {
        let i = r.index() as u64;
        let h = |k: u64| ((i * 2654435761 + seed * 97 + k * 40503) % 1000) as f64 / 10.0 - 20.0;
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.code(),
            h(1),
            h(2),
            h(3),
            if i.is_multiple_of(9) { "NA".to_string() } else { h(4).to_string() },
            h(5),
            h(6)
        ));
    }
    let t = parse_table(&csv, "state").unwrap();
    bind_series(&t, &["y1", "y2", "y3", "y4"], "ys").unwrap()
}

fn spec() -> ChartSpec {
    let mut s = ChartSpec::new(
        "Every glyph",
        SortSpec::descending("a"),
        vec![
            ColumnSpec::map(),
            ColumnSpec::legend(),
            ColumnSpec::new(ColumnKind::Dot, "A", &["a"]).with_options(ColumnOptions {
                reference_line: Some(0.0),
                ..ColumnOptions::default()
            }),
            ColumnSpec::new(ColumnKind::Bar, "B", &["b"]),
            ColumnSpec::new(ColumnKind::Arrow, "y1 to y3", &["ys:y1", "ys:y3"]),
            ColumnSpec::new(ColumnKind::TimeSeries, "Series", &["ys"]),
            ColumnSpec::new(ColumnKind::Scatter, "A vs B", &["a", "b"]),
        ],
    );
    s.map_mode = MapMode::Cumulative;
    s.width = 1400.0;
    s
}

#[test]
fn svg_is_well_formed_and_counted() {
    let c = compose_chart(&spec(), &table(1), &default_atlas()).unwrap();
    assert_eq!(check_chart(&c.scene, &c.layout, 5), Vec::<String>::new());
    let svg = emit_svg(&c.scene, &SvgOptions::default()).unwrap();
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let elements = doc.descendants().filter(|n| n.is_element()).count();
    assert_eq!(elements, c.scene.shapes.len() + 3);
    assert!(!doc.descendants().any(|n| n.has_tag_name("g")));
    assert!(!svg.contains("transform"));
    let again = emit_svg(&compose_chart(&spec(), &table(1), &default_atlas()).unwrap().scene, &SvgOptions::default()).unwrap();
    assert_eq!(svg, again);
}

#[test]
fn series_gaps_split_lines() {
    let c = compose_chart(&spec(), &table(1), &default_atlas()).unwrap();
    let lines: BTreeMap<RegionId, usize> = c
        .scene
        .with_role(Role::Mark)
        .filter(|s| s.tag.kind == Some(ColumnKind::TimeSeries))
        .fold(BTreeMap::new(), |mut m, s| {
            *m.entry(s.tag.region.unwrap()).or_insert(0) += 1;
            m
        });
    for (r, n) in lines {
        // y2 missing: one point then a two-period line
        let expected = if r.index() % 9 == 0 { 2 } else { 1 };
        assert_eq!(n, expected, "{r}");
    }
}

#[test]
fn bar_zero_lines_align() {
    let c = compose_chart(&spec(), &table(2), &default_atlas()).unwrap();
    let xs: Vec<f64> = c
        .scene
        .with_role(Role::ZeroLine)
        .filter(|s| s.tag.kind == Some(ColumnKind::Bar))
        .map(|s| match s.geometry {
            Geometry::Line { x1, x2, .. } => {
                assert_eq!(x1, x2);
                x1
            }
            _ => panic!(),
        })
        .collect();
    assert_eq!(xs.len(), c.layout.panel_count());
    assert!(xs.windows(2).all(|w| w[0] == w[1]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn invariants_hold_for_random_data(seed in 0u64..10_000, gs in 2usize..8) {
        let mut s = spec();
        s.group_size = gs;
        let c = compose_chart(&s, &table(seed), &default_atlas()).unwrap();
        prop_assert_eq!(check_chart(&c.scene, &c.layout, gs), Vec::<String>::new());
        let marks = c.scene.with_role(Role::Mark).filter(|m| m.tag.kind == Some(ColumnKind::Dot)).count();
        prop_assert_eq!(marks, 51);
        for p in 0..c.layout.panel_count() {
            let ctx = c.scene.with_role(Role::Context).filter(|m| m.tag.panel == Some(p)).count();
            prop_assert_eq!(ctx, c.layout.ranked.len());
        }
    }
}
