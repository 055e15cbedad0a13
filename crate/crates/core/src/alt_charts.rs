//! Baseline charts for comparison: an alphabetical bar chart and a classed choropleth.

use crate::atlas::Atlas;
use crate::error::{Error, Result};
use crate::region::RegionId;
use crate::scale::{linear_scale, nice_step, pad_degenerate};
use crate::scene::{Anchor, Color, Geometry, Rect, Role, Scene, Shape, Style, Tag};
use crate::svg::format_number;
use crate::table::{extent_of, RegionTable};

/// `k = boundaries.len() + 1` classes; class `i` is `[boundaries[i-1], boundaries[i])`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassBreaks {
    pub boundaries: Vec<f64>,
    pub colors: Vec<Color>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum BreakRule {
    Explicit(ClassBreaks),
    /// Equal-interval classes over the column's extent.
    Auto(usize),
}

impl ClassBreaks {
    pub fn new(boundaries: Vec<f64>, colors: Vec<Color>) -> Result<Self> {
        let increasing = boundaries.windows(2).all(|w| w[0] < w[1]);
        if !increasing || boundaries.iter().any(|b| !b.is_finite()) {
            return Err(Error::BadBreaks);
        }
        if colors.len() != boundaries.len() + 1 {
            return Err(Error::spec(
                "breaks.colors",
                format!("expected {} colors, got {}", boundaries.len() + 1, colors.len()),
            ));
        }
        Ok(ClassBreaks { boundaries, colors })
    }

    pub fn class_count(&self) -> usize {
        self.boundaries.len() + 1
    }

    /// Index of the class containing `value`; a value on a boundary goes up.
    pub fn classify(&self, value: f64) -> usize {
        self.boundaries.partition_point(|b| *b <= value)
    }

    /// Class intervals tiling `extent`.
    pub fn intervals(&self, extent: (f64, f64)) -> Vec<(f64, f64)> {
        let mut edges = vec![extent.0];
        edges.extend(&self.boundaries);
        edges.push(extent.1);
        edges.windows(2).map(|w| (w[0], w[1])).collect()
    }
}

fn hex(c: [f64; 3]) -> Color {
    Color::new(format!(
        "#{:02X}{:02X}{:02X}",
        c[0].round() as u8,
        c[1].round() as u8,
        c[2].round() as u8
    ))
}

/// A light-to-dark blue ramp of `k` colors.
pub fn sequential_ramp(k: usize) -> Vec<Color> {
    let (light, dark) = ([222.0, 235.0, 247.0], [8.0, 81.0, 156.0]);
    (0..k)
        .map(|i| {
            let t = if k == 1 { 0.5 } else { i as f64 / (k - 1) as f64 };
            hex([0, 1, 2].map(|j| light[j] + (dark[j] - light[j]) * t))
        })
        .collect()
}

/// Equal-interval breaks; a degenerate extent is padded first.
pub fn auto_breaks(extent: (f64, f64), k: usize) -> Result<ClassBreaks> {
    if k == 0 {
        return Err(Error::BadBreaks);
    }
    let (lo, hi) = pad_degenerate(extent);
    let boundaries = (1..k).map(|i| lo + (hi - lo) * i as f64 / k as f64).collect();
    ClassBreaks::new(boundaries, sequential_ramp(k))
}

fn values(table: &RegionTable, column: &str) -> Result<Vec<(RegionId, Option<f64>)>> {
    let at = table.resolve_ref(column)?;
    Ok(table.regions().map(|r| (r, table.value(r, at))).collect())
}

fn text(x: f64, y: f64, content: &str, size: f64, anchor: Anchor, tag: Tag) -> Shape {
    Shape::new(
        Geometry::Text {
            x,
            y,
            content: content.to_string(),
            size,
            anchor,
            bold: tag.role == Role::Title,
        },
        Style::fill(&Color::from("#333333")),
        tag,
    )
}

/// Vertical bars in USPS-code order, every bar labeled, one y axis.
pub fn render_barchart_alpha(table: &RegionTable, column: &str) -> Result<Scene> {
    let vals = values(table, column)?;
    let ext = extent_of(vals.iter().filter_map(|(_, v)| *v))
        .ok_or_else(|| Error::EmptyColumn(column.to_string()))?;
    let (w, h) = (1000.0, 500.0);
    let plot = Rect::new(60.0, 50.0, w - 80.0, h - 100.0);
    let scale = linear_scale(
        (ext.0.min(0.0), ext.1.max(0.0)),
        (plot.bottom(), plot.y),
        5,
    )?;
    let ink = Color::from("#333333");
    let bar_color = Color::from("#4C72B0");
    let mut scene = Scene::new(w, h);
    scene.title = Some(column.to_string());
    for (t, label) in scale.ticks.iter().zip(&scale.labels) {
        let y = scale.map(*t);
        scene.push(Shape::new(
            Geometry::Line { x1: plot.x, y1: y, x2: plot.right(), y2: y },
            Style::stroke(&Color::from("#E0E0E0"), 0.5),
            Tag::new(Role::GridY).value(*t),
        ));
        scene.push(text(plot.x - 6.0, y + 3.0, label, 9.0, Anchor::End, Tag::new(Role::TickLabel).value(*t)));
    }
    let slot = plot.width / vals.len().max(1) as f64;
    let zero = scale.map(0.0);
    for (i, (r, v)) in vals.iter().enumerate() {
        let cx = plot.x + slot * (i as f64 + 0.5);
        if let Some(v) = v {
            let y = scale.check(*v)?;
            scene.push(Shape::new(
                Geometry::Rect(Rect::new(cx - slot * 0.35, y.min(zero), slot * 0.7, (y - zero).abs())),
                Style::fill(&bar_color),
                Tag::new(Role::Mark).region(*r).value(*v),
            ));
        }
        scene.push(text(cx, plot.bottom() + 14.0, r.code(), 8.0, Anchor::Middle, Tag::new(Role::Label).region(*r)));
    }
    scene.push(Shape::new(
        Geometry::Line { x1: plot.x, y1: plot.y, x2: plot.x, y2: plot.bottom() },
        Style::stroke(&ink, 0.8),
        Tag::new(Role::Axis),
    ));
    scene.push(Shape::new(
        Geometry::Line { x1: plot.x, y1: zero, x2: plot.right(), y2: zero },
        Style::stroke(&ink, 0.8),
        Tag::new(Role::ZeroLine).value(0.0),
    ));
    scene.push(text(w / 2.0, 30.0, column, 14.0, Anchor::Middle, Tag::new(Role::Title)));
    Ok(scene)
}

fn interval_label(lo: f64, hi: f64, decimals: usize, last: bool) -> String {
    let close = if last { "]" } else { ")" };
    format!(
        "[{}, {}{close}",
        format_number(lo, decimals),
        format_number(hi, decimals)
    )
}

/// Regions filled by class, with a legend of explicit numeric intervals.
pub fn render_choropleth(
    atlas: &Atlas,
    table: &RegionTable,
    column: &str,
    rule: &BreakRule,
) -> Result<Scene> {
    let vals = values(table, column)?;
    let ext = extent_of(vals.iter().filter_map(|(_, v)| *v))
        .ok_or_else(|| Error::EmptyColumn(column.to_string()))?;
    let breaks = match rule {
        BreakRule::Auto(k) => auto_breaks(ext, *k)?,
        BreakRule::Explicit(b) => {
            ClassBreaks::new(b.boundaries.clone(), b.colors.clone())?;
            if b.boundaries.iter().any(|x| *x < ext.0 || *x > ext.1) {
                return Err(Error::BadBreaks);
            }
            b.clone()
        }
    };
    let (w, h) = (960.0, 600.0);
    let fit = atlas.fit(Rect::new(20.0, 50.0, 700.0, 520.0));
    let no_data = Color::from("#8C8C8C");
    let stroke = Color::from("#FFFFFF");
    let mut scene = Scene::new(w, h);
    scene.title = Some(column.to_string());
    let mut any_missing = false;
    for (region, rings) in atlas.regions() {
        let value = vals.iter().find(|(r, _)| *r == region).and_then(|(_, v)| *v);
        let (fill, tag) = match value {
            Some(v) => (
                &breaks.colors[breaks.classify(v)],
                Tag::new(Role::MapFill).region(region).value(v),
            ),
            None => {
                any_missing = true;
                (&no_data, Tag::new(Role::MapFill).region(region))
            }
        };
        let path = rings
            .iter()
            .map(|ring| ring.iter().map(|p| fit(*p)).collect())
            .collect();
        scene.push(Shape::new(
            Geometry::Path(path),
            Style::fill(fill).with_stroke(&stroke, 0.6),
            tag,
        ));
    }
    let step = nice_step(((ext.1 - ext.0) / breaks.class_count() as f64).max(f64::MIN_POSITIVE));
    let decimals = (step.decimals() + 1).min(6);
    let intervals = breaks.intervals(ext);
    let (lx, mut ly) = (750.0, 80.0);
    scene.push(text(lx, ly - 12.0, column, 10.0, Anchor::Start, Tag::new(Role::Header)));
    for (i, (lo, hi)) in intervals.iter().enumerate() {
        scene.push(Shape::new(
            Geometry::Rect(Rect::new(lx, ly, 16.0, 12.0)),
            Style::fill(&breaks.colors[i]).with_stroke(&Color::from("#7F7F7F"), 0.4),
            Tag::new(Role::Swatch).value(*lo),
        ));
        let label = interval_label(*lo, *hi, decimals, i + 1 == intervals.len());
        scene.push(text(lx + 22.0, ly + 10.0, &label, 9.0, Anchor::Start, Tag::new(Role::Label).value(*lo)));
        ly += 18.0;
    }
    if any_missing {
        scene.push(Shape::new(
            Geometry::Rect(Rect::new(lx, ly, 16.0, 12.0)),
            Style::fill(&no_data),
            Tag::new(Role::Swatch),
        ));
        scene.push(text(lx + 22.0, ly + 10.0, "No data", 9.0, Anchor::Start, Tag::new(Role::Label)));
    }
    scene.push(text(w / 2.0, 30.0, column, 14.0, Anchor::Middle, Tag::new(Role::Title)));
    scene.shapes.sort_by_key(|s| s.tag.role == Role::Title || s.tag.role == Role::Label || s.tag.role == Role::Header);
    Ok(scene)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::default_atlas;
    use crate::table::parse_table;
    use proptest::prelude::*;

    fn table(f: impl Fn(RegionId) -> String) -> RegionTable {
        let body: String = RegionId::all().map(|r| format!("{},{}\n", r.code(), f(r))).collect();
        parse_table(&format!("state,v\n{body}"), "state").unwrap()
    }

    #[test]
    fn auto_examples() {
        assert_eq!(auto_breaks((0.0, 100.0), 4).unwrap().boundaries, vec![25.0, 50.0, 75.0]);
        let one = auto_breaks((0.0, 100.0), 1).unwrap();
        assert!(one.boundaries.is_empty());
        assert_eq!(auto_breaks((0.0, 1.0), 0), Err(Error::BadBreaks));
        assert_eq!(auto_breaks((3.0, 3.0), 2).unwrap().boundaries, vec![3.0]);
    }

    #[test]
    fn boundary_goes_up() {
        let b = auto_breaks((0.0, 100.0), 4).unwrap();
        assert_eq!(b.classify(25.0), 1);
        assert_eq!(b.classify(24.999), 0);
        assert_eq!(b.classify(100.0), 3);
        assert_eq!(b.classify(0.0), 0);
    }

    #[test]
    fn bad_breaks() {
        let c = sequential_ramp(3);
        assert_eq!(ClassBreaks::new(vec![2.0, 1.0], c.clone()), Err(Error::BadBreaks));
        assert_eq!(ClassBreaks::new(vec![1.0, 1.0], c.clone()), Err(Error::BadBreaks));
        let t = table(|r| r.index().to_string());
        let outside = BreakRule::Explicit(ClassBreaks::new(vec![10.0, 99.0], c).unwrap());
        assert_eq!(render_choropleth(&default_atlas(), &t, "v", &outside), Err(Error::BadBreaks));
    }

    #[test]
    fn barchart_order() {
        let t = table(|r| if r.code() == "UT" { "90".into() } else { "50".into() });
        let s = render_barchart_alpha(&t, "v").unwrap();
        let bars: Vec<&Shape> = s.with_role(Role::Mark).collect();
        assert_eq!(bars.len(), 51);
        assert_eq!(bars[0].tag.region.unwrap().code(), "AK");
        let tallest = bars
            .iter()
            .max_by(|a, b| a.tag.value.unwrap().total_cmp(&b.tag.value.unwrap()))
            .unwrap();
        assert_eq!(tallest.tag.region.unwrap().code(), "UT");
        assert_eq!(s.with_role(Role::Label).count(), 51);
        assert!(matches!(render_barchart_alpha(&t, "nope"), Err(Error::MissingColumn(_))));
    }

    #[test]
    fn constant_bars_equal() {
        let s = render_barchart_alpha(&table(|_| "7".into()), "v").unwrap();
        let heights: Vec<f64> = s
            .with_role(Role::Mark)
            .map(|m| match m.geometry {
                Geometry::Rect(r) => r.height,
                _ => panic!(),
            })
            .collect();
        assert!(heights.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn choropleth_classes() {
        let t = table(|r| r.index().to_string());
        let s = render_choropleth(&default_atlas(), &t, "v", &BreakRule::Auto(1)).unwrap();
        let fills: std::collections::BTreeSet<&str> =
            s.with_role(Role::MapFill).map(|m| m.style.fill.as_ref().unwrap().as_str()).collect();
        assert_eq!(fills.len(), 1);
        let s = render_choropleth(&default_atlas(), &t, "v", &BreakRule::Auto(5)).unwrap();
        assert_eq!(s.with_role(Role::MapFill).count(), 51);
        assert_eq!(s.with_role(Role::Swatch).count(), 5);
    }

    proptest! {
        #[test]
        fn total_classification(lo in -1e3f64..1e3, span in 0.0f64..1e3, k in 1usize..9, t in 0.0f64..=1.0) {
            let b = auto_breaks((lo, lo + span), k).unwrap();
            let v = lo + span * t;
            let c = b.classify(v);
            prop_assert!(c < b.class_count());
            let iv = b.intervals(pad_degenerate((lo, lo + span)));
            prop_assert_eq!(iv.len(), k);
            prop_assert!(iv.windows(2).all(|w| w[0].1 == w[1].0));
            let (a, z) = iv[c];
            prop_assert!(v >= a && (v < z || c == k - 1));
        }
    }
}
