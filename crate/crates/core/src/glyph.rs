//! Per-panel glyph rendering for the six statistic column types.
//!
//! Every renderer draws one row panel: the regions of one perceptual group at the row
//! centers given by [`Panel`]. Scales are built once per column by the caller and shared
//! by all panels of that column, so tick guides line up from the top panel to the bottom.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::layout::LinkedLayout;
use crate::palette::Palette;
use crate::region::RegionId;
use crate::scale::Scale;
use crate::scene::{Anchor, Color, Geometry, Point, Rect, Role, Shape, Style, Tag};
use crate::stats::compute_box_stats;

/// Placement of one row panel.
#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub index: usize,
    /// The panel's plotting area; horizontal scales map onto `rect.x..rect.right()`.
    pub rect: Rect,
    /// Regions in display order with their row center.
    pub rows: Vec<(RegionId, f64)>,
    pub row_height: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GlyphStyle {
    pub palette: Palette,
    pub guide: Color,
    pub grid: Color,
    pub context: Color,
    pub ink: Color,
    pub font_size: f64,
    /// Arrowhead length in canvas units, independent of the data.
    pub arrow_head: f64,
}

impl Default for GlyphStyle {
    fn default() -> Self {
        GlyphStyle {
            palette: Palette::default(),
            guide: Color::from("#D9D9D9"),
            grid: Color::from("#EDEDED"),
            context: Color::from("#B3B3B3"),
            ink: Color::from("#333333"),
            font_size: 7.0,
            arrow_head: 4.0,
        }
    }
}

/// Per-region bindings for one glyph column. Absent regions are missing.
#[derive(Debug, Clone, PartialEq)]
pub enum GlyphColumnInput {
    Dot(BTreeMap<RegionId, f64>),
    Bar(BTreeMap<RegionId, f64>),
    Arrow(BTreeMap<RegionId, (f64, f64)>),
    TimeSeries {
        periods: Vec<String>,
        values: BTreeMap<RegionId, Vec<Option<f64>>>,
    },
    BoxPlot(BTreeMap<RegionId, Vec<f64>>),
    Scatter(BTreeMap<RegionId, (f64, f64)>),
}

impl GlyphColumnInput {
    /// Extent of the horizontal data values (for scatter, the x values).
    pub fn x_extent(&self) -> Option<(f64, f64)> {
        use crate::table::extent_of;
        match self {
            GlyphColumnInput::Dot(m) | GlyphColumnInput::Bar(m) => extent_of(m.values().copied()),
            GlyphColumnInput::Arrow(m) => extent_of(m.values().flat_map(|(a, b)| [*a, *b])),
            GlyphColumnInput::TimeSeries { periods, .. } => {
                (!periods.is_empty()).then(|| (0.0, (periods.len() - 1) as f64))
            }
            GlyphColumnInput::BoxPlot(m) => extent_of(m.values().flatten().copied()),
            GlyphColumnInput::Scatter(m) => extent_of(m.values().map(|p| p.0)),
        }
    }

    /// Extent of the vertical data values for time series and scatter columns.
    pub fn y_extent(&self) -> Option<(f64, f64)> {
        use crate::table::extent_of;
        match self {
            GlyphColumnInput::TimeSeries { values, .. } => {
                extent_of(values.values().flatten().flatten().copied())
            }
            GlyphColumnInput::Scatter(m) => extent_of(m.values().map(|p| p.1)),
            _ => None,
        }
    }
}

fn slot_color<'a>(layout: &LinkedLayout, style: &'a GlyphStyle, region: RegionId) -> &'a Color {
    match layout.slot(region) {
        Some(slot) => style.palette.color(slot),
        None => &style.palette.no_data,
    }
}

fn line(x1: f64, y1: f64, x2: f64, y2: f64) -> Geometry {
    Geometry::Line { x1, y1, x2, y2 }
}

fn text(x: f64, y: f64, content: &str, size: f64, anchor: Anchor) -> Geometry {
    Geometry::Text {
        x,
        y,
        content: content.to_string(),
        size,
        anchor,
        bold: false,
    }
}

/// Vertical tick guides for a horizontal scale.
fn grid_x(scale: &Scale, panel: &Panel, style: &GlyphStyle) -> Vec<Shape> {
    scale
        .ticks
        .iter()
        .map(|t| {
            let x = scale.map(*t);
            Shape::new(
                line(x, panel.rect.y, x, panel.rect.bottom()),
                Style::stroke(&style.grid, 0.5),
                Tag::new(Role::GridX).panel(panel.index).value(*t),
            )
        })
        .collect()
}

/// Horizontal tick guides for a vertical scale, labeled when the panel is tall enough.
fn grid_y(scale: &Scale, panel: &Panel, style: &GlyphStyle) -> Vec<Shape> {
    let size = style.font_size * 0.8;
    let spacing = match scale.ticks.as_slice() {
        [a, b, ..] => (scale.map(*b) - scale.map(*a)).abs(),
        _ => f64::INFINITY,
    };
    let mut out = Vec::new();
    for (t, label) in scale.ticks.iter().zip(&scale.labels) {
        let y = scale.map(*t);
        out.push(Shape::new(
            line(panel.rect.x, y, panel.rect.right(), y),
            Style::stroke(&style.grid, 0.5),
            Tag::new(Role::GridY).panel(panel.index).value(*t),
        ));
        if spacing < size * 1.2 {
            continue;
        }
        out.push(Shape::new(
            text(panel.rect.x - 1.5, y + size * 0.35, label, size, Anchor::End),
            Style::fill(&style.ink),
            Tag::new(Role::TickLabel).panel(panel.index).value(*t),
        ));
    }
    out
}

fn row_guides(panel: &Panel, style: &GlyphStyle) -> Vec<Shape> {
    panel
        .rows
        .iter()
        .map(|(r, y)| {
            Shape::new(
                line(panel.rect.x, *y, panel.rect.right(), *y),
                Style::stroke(&style.guide, 0.4),
                Tag::new(Role::Guide).panel(panel.index).region(*r),
            )
        })
        .collect()
}

fn missing_note(panel: &Panel, region: RegionId, y: f64, style: &GlyphStyle) -> Shape {
    Shape::new(
        text(panel.rect.x + 2.0, y + style.font_size * 0.35, "n/a", style.font_size, Anchor::Start),
        Style::fill(&style.context),
        Tag::new(Role::Annotation).panel(panel.index).region(region),
    )
}

fn dot_radius(panel: &Panel) -> f64 {
    (panel.row_height * 0.3).clamp(1.5, 4.5)
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DotOptions {
    pub reference_line: Option<f64>,
}

/// One circle per region at its value; a missing value gets an `n/a` note instead.
pub fn render_dot(
    values: &BTreeMap<RegionId, f64>,
    scale: &Scale,
    layout: &LinkedLayout,
    panel: &Panel,
    style: &GlyphStyle,
    options: DotOptions,
) -> Result<Vec<Shape>> {
    let mut out = grid_x(scale, panel, style);
    out.extend(row_guides(panel, style));
    if let Some(v) = options.reference_line {
        let x = scale.check(v)?;
        out.push(Shape::new(
            line(x, panel.rect.y, x, panel.rect.bottom()),
            Style::stroke(&style.ink, 0.6).dashed(),
            Tag::new(Role::Reference).panel(panel.index).value(v),
        ));
    }
    let r = dot_radius(panel);
    for (region, y) in &panel.rows {
        match values.get(region) {
            Some(v) => {
                let x = scale.check(*v)?;
                out.push(Shape::new(
                    Geometry::Circle { cx: x, cy: *y, r },
                    Style::fill(slot_color(layout, style, *region)).with_stroke(&style.ink, 0.3),
                    Tag::new(Role::Mark).panel(panel.index).region(*region).value(*v),
                ));
            }
            None => out.push(missing_note(panel, *region, *y, style)),
        }
    }
    Ok(out)
}

/// Horizontal bars anchored at zero; the scale's domain must contain zero.
pub fn render_bar(
    values: &BTreeMap<RegionId, f64>,
    scale: &Scale,
    layout: &LinkedLayout,
    panel: &Panel,
    style: &GlyphStyle,
) -> Result<Vec<Shape>> {
    let zero = scale.check(0.0)?;
    let mut out = grid_x(scale, panel, style);
    out.extend(row_guides(panel, style));
    let h = (panel.row_height * 0.6).max(1.0);
    for (region, y) in &panel.rows {
        match values.get(region) {
            Some(v) => {
                let x = scale.check(*v)?;
                let color = slot_color(layout, style, *region);
                out.push(Shape::new(
                    Geometry::Rect(Rect::new(x.min(zero), y - h / 2.0, (x - zero).abs(), h)),
                    Style::fill(color).with_stroke(color, 0.3),
                    Tag::new(Role::Mark).panel(panel.index).region(*region).value(*v),
                ));
            }
            None => out.push(missing_note(panel, *region, *y, style)),
        }
    }
    out.push(Shape::new(
        line(zero, panel.rect.y, zero, panel.rect.bottom()),
        Style::stroke(&style.ink, 0.7),
        Tag::new(Role::ZeroLine).panel(panel.index).value(0.0),
    ));
    Ok(out)
}

/// A segment from start to end with a fixed-size head at the end. Equal ends draw a
/// diamond, since the direction is undefined.
pub fn render_arrow(
    values: &BTreeMap<RegionId, (f64, f64)>,
    scale: &Scale,
    layout: &LinkedLayout,
    panel: &Panel,
    style: &GlyphStyle,
) -> Result<Vec<Shape>> {
    let mut out = grid_x(scale, panel, style);
    out.extend(row_guides(panel, style));
    let head = style.arrow_head;
    for (region, y) in &panel.rows {
        let Some((start, end)) = values.get(region) else {
            out.push(missing_note(panel, *region, *y, style));
            continue;
        };
        let (x0, x1) = (scale.check(*start)?, scale.check(*end)?);
        let color = slot_color(layout, style, *region);
        let tag = Tag::new(Role::Mark).panel(panel.index).region(*region).value(end - start);
        if start == end {
            let d = head * 0.6;
            out.push(Shape::new(
                Geometry::Polygon(vec![
                    Point::new(x0, y - d),
                    Point::new(x0 + d, *y),
                    Point::new(x0, y + d),
                    Point::new(x0 - d, *y),
                ]),
                Style::fill(color).with_stroke(color, 0.3),
                tag,
            ));
            continue;
        }
        let dir = (x1 - x0).signum();
        let shaft_end = if (x1 - x0).abs() > head { x1 - dir * head } else { x0 };
        out.push(Shape::new(
            line(x0, *y, shaft_end, *y),
            Style::stroke(color, 1.6),
            tag,
        ));
        let half = head * 0.5;
        out.push(Shape::new(
            Geometry::Polygon(vec![
                Point::new(x1, *y),
                Point::new(x1 - dir * head, y - half),
                Point::new(x1 - dir * head, y + half),
            ]),
            Style::fill(color),
            Tag::new(Role::MarkDetail).panel(panel.index).region(*region),
        ));
    }
    Ok(out)
}

/// One polyline per region over evenly spaced periods. Missing periods split the line;
/// an isolated value is drawn as a small point.
pub fn render_timeseries(
    periods: &[String],
    values: &BTreeMap<RegionId, Vec<Option<f64>>>,
    x_scale: &Scale,
    y_scale: &Scale,
    layout: &LinkedLayout,
    panel: &Panel,
    style: &GlyphStyle,
) -> Result<Vec<Shape>> {
    if x_scale.ticks.iter().any(|t| *t < 0.0 || *t as usize >= periods.len()) {
        return Err(Error::SeriesMismatch);
    }
    let mut out = grid_x(x_scale, panel, style);
    out.extend(grid_y(y_scale, panel, style));
    for (region, y) in &panel.rows {
        let Some(series) = values.get(region) else {
            out.push(missing_note(panel, *region, *y, style));
            continue;
        };
        if series.len() != periods.len() {
            return Err(Error::SeriesMismatch);
        }
        let color = slot_color(layout, style, *region);
        let mut runs: Vec<Vec<(Point, f64)>> = vec![Vec::new()];
        for (i, v) in series.iter().enumerate() {
            match v {
                Some(v) => {
                    let p = Point::new(x_scale.check(i as f64)?, y_scale.check(*v)?);
                    runs.last_mut().expect("non-empty").push((p, *v));
                }
                None if !runs.last().expect("non-empty").is_empty() => runs.push(Vec::new()),
                None => {}
            }
        }
        runs.retain(|r| !r.is_empty());
        if runs.is_empty() {
            out.push(missing_note(panel, *region, *y, style));
        }
        for run in runs {
            let tag = Tag::new(Role::Mark).panel(panel.index).region(*region);
            if let [(p, v)] = run.as_slice() {
                out.push(Shape::new(
                    Geometry::Circle { cx: p.x, cy: p.y, r: 1.2 },
                    Style::fill(color),
                    tag.value(*v),
                ));
            } else {
                let mut s = Style::stroke(color, 1.2);
                s.fill = Some(Color::from("none"));
                out.push(Shape::new(
                    Geometry::Polyline(run.into_iter().map(|(p, _)| p).collect()),
                    s,
                    tag,
                ));
            }
        }
    }
    Ok(out)
}

/// Box, whiskers, median tick and outliers per region.
pub fn render_boxplot(
    samples: &BTreeMap<RegionId, Vec<f64>>,
    scale: &Scale,
    layout: &LinkedLayout,
    panel: &Panel,
    style: &GlyphStyle,
) -> Result<Vec<Shape>> {
    let mut out = grid_x(scale, panel, style);
    out.extend(row_guides(panel, style));
    let h = (panel.row_height * 0.6).max(1.0);
    for (region, y) in &panel.rows {
        let list = match samples.get(region) {
            Some(list) if !list.is_empty() => list,
            _ => {
                out.push(missing_note(panel, *region, *y, style));
                continue;
            }
        };
        let stats = compute_box_stats(list)?;
        let color = slot_color(layout, style, *region);
        let detail = || Tag::new(Role::MarkDetail).panel(panel.index).region(*region);
        let (wl, wh) = (scale.check(stats.whisker_lo)?, scale.check(stats.whisker_hi)?);
        let (q1, q3, med) = (
            scale.check(stats.q1)?,
            scale.check(stats.q3)?,
            scale.check(stats.median)?,
        );
        out.push(Shape::new(line(wl, *y, wh, *y), Style::stroke(&style.ink, 0.6), detail()));
        out.push(Shape::new(
            Geometry::Rect(Rect::new(q1, y - h / 2.0, q3 - q1, h)),
            Style::fill(color).with_stroke(&style.ink, 0.4),
            Tag::new(Role::Mark).panel(panel.index).region(*region).value(stats.median),
        ));
        out.push(Shape::new(
            line(med, y - h / 2.0, med, y + h / 2.0),
            Style::stroke(&Color::from("#FFFFFF"), 1.0),
            detail().value(stats.median),
        ));
        for o in &stats.outliers {
            let mut s = Style::stroke(color, 0.5);
            s.fill = Some(Color::from("none"));
            out.push(Shape::new(
                Geometry::Circle { cx: scale.check(*o)?, cy: *y, r: 1.3 },
                s,
                detail().value(*o),
            ));
        }
    }
    Ok(out)
}

/// Every ranked region as a gray context point, then this panel's regions on top in
/// their slot colors. No jitter: equal points coincide.
pub fn render_scatter(
    points: &BTreeMap<RegionId, (f64, f64)>,
    x_scale: &Scale,
    y_scale: &Scale,
    layout: &LinkedLayout,
    panel: &Panel,
    style: &GlyphStyle,
) -> Result<Vec<Shape>> {
    let mut out = grid_x(x_scale, panel, style);
    out.extend(grid_y(y_scale, panel, style));
    for region in &layout.ranked {
        if let Some((x, y)) = points.get(region) {
            out.push(Shape::new(
                Geometry::Circle { cx: x_scale.check(*x)?, cy: y_scale.check(*y)?, r: 1.1 },
                Style::fill(&style.context),
                Tag::new(Role::Context).panel(panel.index).region(*region),
            ));
        }
    }
    let r = 3.0;
    for (region, row_y) in &panel.rows {
        match points.get(region) {
            Some((x, y)) => out.push(Shape::new(
                Geometry::Circle { cx: x_scale.check(*x)?, cy: y_scale.check(*y)?, r },
                Style::fill(slot_color(layout, style, *region)).with_stroke(&style.ink, 0.3),
                Tag::new(Role::Mark).panel(panel.index).region(*region),
            )),
            None => out.push(missing_note(panel, *region, *row_y, style)),
        }
    }
    Ok(out)
}
