//! Page assembly: map, legend and glyph columns over one row band per panel.

use std::collections::BTreeMap;

use crate::atlas::{render_minimap, Atlas, MapMode, MiniMapStyle};
use crate::error::{Error, Result};
use crate::glyph::{
    render_arrow, render_bar, render_boxplot, render_dot, render_scatter, render_timeseries,
    DotOptions, GlyphColumnInput, GlyphStyle, Panel,
};
use crate::layout::{build_layout, LinkedLayout, Slot, SortSpec, DEFAULT_GROUP_SIZE};
use crate::palette::Palette;
use crate::region::RegionId;
use crate::scale::{category_scale, linear_scale, Scale};
use crate::scene::{
    Anchor, Color, ColumnKind, Geometry, Rect, Role, Scene, Shape, Style, Tag,
};
use crate::table::{self, RegionTable};

pub const DEFAULT_WIDTH: f64 = 1000.0;
pub const DEFAULT_HEIGHT: f64 = 1300.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NameStyle {
    Full,
    Abbrev,
    /// Full names unless the label would not fit the legend column.
    #[default]
    Auto,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ColumnOptions {
    /// Dot columns only: a dashed vertical line at this data value.
    pub reference_line: Option<f64>,
    /// Share of the glyph width relative to the other glyph columns.
    pub weight: f64,
    pub name_style: NameStyle,
}

impl Default for ColumnOptions {
    fn default() -> Self {
        ColumnOptions {
            reference_line: None,
            weight: 1.0,
            name_style: NameStyle::Auto,
        }
    }
}

/// One chart column. Bindings by kind: map and legend take none; dot and bar take one
/// value reference; arrow takes start and end; timeseries one series column; boxplot one
/// samples column; scatter x and y. Value references are scalar columns or `series:period`.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnSpec {
    pub kind: ColumnKind,
    /// Up to two lines.
    pub header: Vec<String>,
    pub bindings: Vec<String>,
    pub options: ColumnOptions,
}

impl ColumnSpec {
    pub fn new(kind: ColumnKind, header: &str, bindings: &[&str]) -> Self {
        ColumnSpec {
            kind,
            header: header.lines().map(str::to_string).collect(),
            bindings: bindings.iter().map(|s| s.to_string()).collect(),
            options: ColumnOptions::default(),
        }
    }

    pub fn map() -> Self {
        ColumnSpec::new(ColumnKind::Map, "", &[])
    }

    pub fn legend() -> Self {
        ColumnSpec::new(ColumnKind::Legend, "", &[])
    }

    pub fn with_options(mut self, options: ColumnOptions) -> Self {
        self.options = options;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChartSpec {
    pub title: String,
    pub sort: SortSpec,
    pub group_size: usize,
    pub columns: Vec<ColumnSpec>,
    pub map_mode: MapMode,
    pub width: f64,
    pub height: f64,
    pub palette: Palette,
}

impl ChartSpec {
    pub fn new(title: &str, sort: SortSpec, columns: Vec<ColumnSpec>) -> Self {
        ChartSpec {
            title: title.to_string(),
            sort,
            group_size: DEFAULT_GROUP_SIZE,
            columns,
            map_mode: MapMode::GroupOnly,
            width: DEFAULT_WIDTH,
            height: DEFAULT_HEIGHT,
            palette: Palette::default(),
        }
    }
}

fn arity(kind: ColumnKind) -> usize {
    match kind {
        ColumnKind::Map | ColumnKind::Legend => 0,
        ColumnKind::Dot | ColumnKind::Bar | ColumnKind::TimeSeries | ColumnKind::BoxPlot => 1,
        ColumnKind::Arrow | ColumnKind::Scatter => 2,
    }
}

/// Table-independent checks: chart anatomy, binding counts, canvas and options.
pub fn validate_structure(spec: &ChartSpec) -> Result<()> {
    if spec.columns.is_empty() {
        return Err(Error::spec("columns", "at least one column is required"));
    }
    for (kind, name) in [(ColumnKind::Map, "map"), (ColumnKind::Legend, "legend")] {
        let n = spec.columns.iter().filter(|c| c.kind == kind).count();
        if n != 1 {
            return Err(Error::spec(
                "columns",
                format!("exactly one {name} column is required, found {n}"),
            ));
        }
    }
    if spec.group_size == 0 {
        return Err(Error::spec("group_size", "must be at least 1"));
    }
    if !(spec.width.is_finite() && spec.height.is_finite() && spec.width > 0.0 && spec.height > 0.0)
    {
        return Err(Error::spec("canvas", "width and height must be positive"));
    }
    if spec.palette.slots.is_empty() {
        return Err(Error::spec("palette", "at least one slot color is required"));
    }
    for (i, col) in spec.columns.iter().enumerate() {
        let path = format!("columns[{i}]");
        if col.header.len() > 2 {
            return Err(Error::spec(format!("{path}.header"), "at most two lines"));
        }
        if col.bindings.len() != arity(col.kind) {
            return Err(Error::spec(
                format!("{path}.bindings"),
                format!(
                    "{} column takes {} binding(s), got {}",
                    col.kind.as_str(),
                    arity(col.kind),
                    col.bindings.len()
                ),
            ));
        }
        if !(col.options.weight.is_finite() && col.options.weight > 0.0) {
            return Err(Error::spec(format!("{path}.options.weight"), "must be positive"));
        }
        if col.options.reference_line.is_some() && col.kind != ColumnKind::Dot {
            return Err(Error::spec(
                format!("{path}.options.reference_line"),
                "only dot columns take a reference line",
            ));
        }
    }
    Ok(())
}

/// Checks the spec against the table. Returns warnings that do not stop rendering.
pub fn validate_spec(spec: &ChartSpec, table: &RegionTable) -> Result<Vec<String>> {
    validate_structure(spec)?;
    table
        .resolve_ref(&spec.sort.column)
        .map_err(|e| Error::spec("sort.column", e.to_string()))?;
    let mut bound = false;
    for (i, col) in spec.columns.iter().enumerate() {
        let path = format!("columns[{i}]");
        for (j, b) in col.bindings.iter().enumerate() {
            let bpath = format!("{path}.bindings[{j}]");
            let fail = |e: Error| Error::spec(bpath.clone(), e.to_string());
            match col.kind {
                ColumnKind::TimeSeries => {
                    table.periods(b).map_err(fail)?;
                }
                ColumnKind::BoxPlot => {
                    let (_, c) = table.column(b).map_err(fail)?;
                    if c.kind != table::ColumnKind::Samples {
                        return Err(fail(Error::WrongKind {
                            column: b.clone(),
                            expected: "samples",
                            found: c.kind.label(),
                        }));
                    }
                }
                _ => {
                    table.resolve_ref(b).map_err(fail)?;
                }
            }
            bound |= *b == spec.sort.column;
        }
    }
    let mut warnings = Vec::new();
    if !bound {
        warnings.push(format!(
            "sort column {:?} is not shown in any glyph column",
            spec.sort.column
        ));
    }
    Ok(warnings)
}

fn scalar_map(table: &RegionTable, reference: &str) -> Result<BTreeMap<RegionId, f64>> {
    let at = table.resolve_ref(reference)?;
    Ok(table
        .regions()
        .filter_map(|r| table.value(r, at).map(|v| (r, v)))
        .collect())
}

fn pair_map(table: &RegionTable, a: &str, b: &str) -> Result<BTreeMap<RegionId, (f64, f64)>> {
    let (a, b) = (scalar_map(table, a)?, scalar_map(table, b)?);
    Ok(a.iter()
        .filter_map(|(r, x)| b.get(r).map(|y| (*r, (*x, *y))))
        .collect())
}

/// Gathers a glyph column's per-region bindings from the table.
pub fn column_input(column: &ColumnSpec, table: &RegionTable) -> Result<GlyphColumnInput> {
    let b = &column.bindings;
    Ok(match column.kind {
        ColumnKind::Dot => GlyphColumnInput::Dot(scalar_map(table, &b[0])?),
        ColumnKind::Bar => GlyphColumnInput::Bar(scalar_map(table, &b[0])?),
        ColumnKind::Arrow => GlyphColumnInput::Arrow(pair_map(table, &b[0], &b[1])?),
        ColumnKind::Scatter => GlyphColumnInput::Scatter(pair_map(table, &b[0], &b[1])?),
        ColumnKind::TimeSeries => {
            let mut values = BTreeMap::new();
            for r in table.regions() {
                if let Some(s) = table.series(r, &b[0])? {
                    if s.iter().any(Option::is_some) {
                        values.insert(r, s.to_vec());
                    }
                }
            }
            GlyphColumnInput::TimeSeries {
                periods: table.periods(&b[0])?.to_vec(),
                values,
            }
        }
        ColumnKind::BoxPlot => {
            let mut values = BTreeMap::new();
            for r in table.regions() {
                if let Some(s) = table.samples(r, &b[0])? {
                    if !s.is_empty() {
                        values.insert(r, s.to_vec());
                    }
                }
            }
            GlyphColumnInput::BoxPlot(values)
        }
        ColumnKind::Map | ColumnKind::Legend => {
            return Err(Error::spec("columns", "map and legend columns take no bindings"))
        }
    })
}

/// Extent widened by a fraction of its span on both sides.
fn padded(extent: (f64, f64), fraction: f64) -> (f64, f64) {
    let pad = (extent.1 - extent.0) * fraction;
    (extent.0 - pad, extent.1 + pad)
}

const MARGIN: f64 = 20.0;
const TITLE_BLOCK: f64 = 34.0;
const HEADER_BLOCK: f64 = 26.0;
const AXIS_BLOCK: f64 = 18.0;
const COLUMN_GAP: f64 = 14.0;
const BAND_GAP: f64 = 6.0;
const BAND_PAD: f64 = 3.0;
const MAP_WIDTH: f64 = 150.0;
const LEGEND_WIDTH: f64 = 130.0;
const FRAME: &str = "#BFBFBF";
const MEDIAN_FILL: &str = "#F0F0F0";

/// The horizontal scale and optional vertical scale of one glyph column.
struct ColumnScales {
    x: Scale,
    y: Option<Scale>,
}

fn column_scales(input: &GlyphColumnInput, column: &ColumnSpec, x_range: (f64, f64), path: &str) -> Result<ColumnScales> {
    let empty = || Error::spec(format!("{path}.bindings"), "no values to plot");
    if let GlyphColumnInput::TimeSeries { periods, values } = input {
        if values.is_empty() {
            return Err(empty());
        }
        let y_ext = input.y_extent().ok_or_else(empty)?;
        return Ok(ColumnScales {
            x: category_scale(periods, x_range, 6)?,
            y: Some(linear_scale(padded(y_ext, 0.08), (1.0, 0.0), 3)?),
        });
    }
    let mut ext = input.x_extent().ok_or_else(empty)?;
    match column.kind {
        ColumnKind::Bar => ext = (ext.0.min(0.0), ext.1.max(0.0)),
        ColumnKind::Dot => {
            if let Some(v) = column.options.reference_line {
                ext = (ext.0.min(v), ext.1.max(v));
            }
        }
        _ => {}
    }
    let target = if column.kind == ColumnKind::Scatter { 4 } else { 5 };
    let x = linear_scale(padded(ext, 0.04), x_range, target)?;
    let y = match input.y_extent() {
        Some(y_ext) => Some(linear_scale(padded(y_ext, 0.08), (1.0, 0.0), 3)?),
        None => None,
    };
    Ok(ColumnScales { x, y })
}

/// Output of [`compose_chart`]: the scene plus the layout it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct Composition {
    pub layout: LinkedLayout,
    pub scene: Scene,
    pub warnings: Vec<String>,
    /// Row band of each panel, top to bottom.
    pub bands: Vec<Rect>,
    /// Horizontal extent of each column, in spec order.
    pub columns: Vec<Rect>,
}

pub fn compose(spec: &ChartSpec, table: &RegionTable, atlas: &Atlas) -> Result<Scene> {
    compose_chart(spec, table, atlas).map(|c| c.scene)
}

#[allow(clippy::too_many_arguments)]
fn text_shape(x: f64, y: f64, content: &str, size: f64, anchor: Anchor, bold: bool, color: &Color, tag: Tag) -> Shape {
    Shape::new(
        Geometry::Text {
            x,
            y,
            content: content.to_string(),
            size,
            anchor,
            bold,
        },
        Style::fill(color),
        tag,
    )
}

fn line_shape(x1: f64, y1: f64, x2: f64, y2: f64, style: Style, tag: Tag) -> Shape {
    Shape::new(Geometry::Line { x1, y1, x2, y2 }, style, tag)
}

fn paint_layer(role: Role) -> u8 {
    match role {
        Role::Background | Role::MedianBand | Role::PanelFrame => 0,
        Role::Guide
        | Role::GridX
        | Role::GridY
        | Role::ZeroLine
        | Role::Reference
        | Role::MedianSeparator
        | Role::NoDataSeparator => 1,
        Role::MapFill => 2,
        Role::MapStroke => 3,
        Role::Context | Role::Mark | Role::MarkDetail | Role::Swatch => 4,
        Role::Axis | Role::Tick => 5,
        Role::TickLabel | Role::Label | Role::Annotation | Role::Header | Role::Title => 6,
    }
}

/// Vertical bands: one per panel, rows of equal height, gutters between bands.
fn row_bands(layout: &LinkedLayout, top: f64, height: f64) -> Result<(Vec<Rect>, f64)> {
    let panels = layout.panel_count();
    let rows: usize = (0..panels).map(|p| layout.members(p).len()).sum();
    let fixed = panels as f64 * 2.0 * BAND_PAD + (panels.saturating_sub(1)) as f64 * BAND_GAP;
    let row_h = (height - fixed) / rows as f64;
    if row_h.is_nan() || row_h < 2.0 {
        return Err(Error::spec("canvas.height", "too small for the number of rows"));
    }
    let mut y = top;
    let mut bands = Vec::with_capacity(panels);
    for p in 0..panels {
        let h = layout.members(p).len() as f64 * row_h + 2.0 * BAND_PAD;
        bands.push(Rect::new(0.0, y, 0.0, h));
        y += h + BAND_GAP;
    }
    Ok((bands, row_h))
}

fn panel_rows(layout: &LinkedLayout, p: usize, band: Rect, row_h: f64) -> Vec<(RegionId, f64)> {
    layout
        .members(p)
        .iter()
        .enumerate()
        .map(|(i, r)| (*r, band.y + BAND_PAD + (i as f64 + 0.5) * row_h))
        .collect()
}

/// Builds the layout and lays out every column of the chart.
pub fn compose_chart(spec: &ChartSpec, table: &RegionTable, atlas: &Atlas) -> Result<Composition> {
    let warnings = validate_spec(spec, table)?;
    let layout = build_layout(table, &spec.sort, spec.group_size)?;
    let glyph_style = GlyphStyle {
        palette: spec.palette.clone(),
        ..GlyphStyle::default()
    };
    let ink = glyph_style.ink.clone();
    let frame_color = Color::from(FRAME);

    // horizontal allocation
    let fixed: f64 = spec
        .columns
        .iter()
        .map(|c| match c.kind {
            ColumnKind::Map => MAP_WIDTH,
            ColumnKind::Legend => LEGEND_WIDTH,
            _ => 0.0,
        })
        .sum();
    let gaps = (spec.columns.len() - 1) as f64 * COLUMN_GAP;
    let free = spec.width - 2.0 * MARGIN - fixed - gaps;
    let weights: f64 = spec
        .columns
        .iter()
        .filter(|c| c.kind.is_glyph())
        .map(|c| c.options.weight)
        .sum();
    if free <= 0.0 || (weights > 0.0 && free < 40.0) {
        return Err(Error::spec("canvas.width", "too narrow for the columns"));
    }
    let mut x = MARGIN;
    let mut columns = Vec::with_capacity(spec.columns.len());
    for c in &spec.columns {
        let w = match c.kind {
            ColumnKind::Map => MAP_WIDTH,
            ColumnKind::Legend => LEGEND_WIDTH,
            _ => free * c.options.weight / weights,
        };
        columns.push(Rect::new(x, 0.0, w, spec.height));
        x += w + COLUMN_GAP;
    }

    // vertical allocation
    let header_top = MARGIN + TITLE_BLOCK;
    let panels_top = header_top + HEADER_BLOCK + AXIS_BLOCK;
    let panels_height = spec.height - panels_top - AXIS_BLOCK - MARGIN;
    let (bands, row_h) = row_bands(&layout, panels_top, panels_height)?;
    let full_left = columns[0].x;
    let full_right = columns.last().expect("non-empty").right();

    let mut scene = Scene::new(spec.width, spec.height);
    scene.title = Some(spec.title.clone());
    scene.push(text_shape(
        spec.width / 2.0,
        MARGIN + 16.0,
        &spec.title,
        16.0,
        Anchor::Middle,
        true,
        &ink,
        Tag::new(Role::Title),
    ));

    if let Some(m) = layout.plan.median_group_index {
        let band = bands[m];
        scene.push(Shape::new(
            Geometry::Rect(Rect::new(full_left, band.y, full_right - full_left, band.height)),
            Style::fill(&Color::from(MEDIAN_FILL)),
            Tag::new(Role::MedianBand).panel(m),
        ));
        for y in [band.y - BAND_GAP / 2.0, band.bottom() + BAND_GAP / 2.0] {
            scene.push(line_shape(
                full_left,
                y,
                full_right,
                y,
                Style::stroke(&ink, 0.8),
                Tag::new(Role::MedianSeparator).panel(m),
            ));
        }
    }
    if let Some(p) = layout.no_data_panel() {
        let y = bands[p].y - BAND_GAP / 2.0;
        scene.push(line_shape(
            full_left,
            y,
            full_right,
            y,
            Style::stroke(&ink, 0.8).dashed(),
            Tag::new(Role::NoDataSeparator).panel(p),
        ));
    }

    let map_style = MiniMapStyle {
        mode: spec.map_mode,
        palette: spec.palette.clone(),
        ..MiniMapStyle::default()
    };
    for (ci, (col, area)) in spec.columns.iter().zip(&columns).enumerate() {
        let mut shapes = Vec::new();
        for (li, line) in col.header.iter().enumerate() {
            shapes.push(text_shape(
                area.x + area.width / 2.0,
                header_top + 10.0 + 11.0 * li as f64,
                line,
                9.0,
                Anchor::Middle,
                true,
                &ink,
                Tag::new(Role::Header),
            ));
        }
        for (p, band) in bands.iter().enumerate() {
            shapes.push(Shape::new(
                Geometry::Rect(Rect::new(area.x, band.y, area.width, band.height)),
                Style {
                    fill: Some(Color::from("none")),
                    ..Style::stroke(&frame_color, 0.5)
                },
                Tag::new(Role::PanelFrame).panel(p),
            ));
        }
        match col.kind {
            ColumnKind::Map => {
                for (p, band) in bands.iter().enumerate() {
                    let frame = Rect::new(area.x, band.y, area.width, band.height).inset(2.0, 2.0);
                    shapes.extend(
                        render_minimap(atlas, &layout, p, &map_style, frame)
                            .into_iter()
                            .map(|s| Shape { tag: s.tag.panel(p), ..s }),
                    );
                }
            }
            ColumnKind::Legend => {
                for (p, band) in bands.iter().enumerate() {
                    let panel = Panel {
                        index: p,
                        rect: Rect::new(area.x, band.y, area.width, band.height),
                        rows: panel_rows(&layout, p, *band, row_h),
                        row_height: row_h,
                    };
                    shapes.extend(render_legend_column(
                        &layout,
                        &panel,
                        col.options.name_style,
                        &glyph_style,
                    ));
                }
            }
            kind => {
                let path = format!("columns[{ci}]");
                let input = column_input(col, table)?;
                let inset_left = if matches!(kind, ColumnKind::TimeSeries | ColumnKind::Scatter) {
                    18.0
                } else {
                    4.0
                };
                let plot_x = (area.x + inset_left, area.right() - 4.0);
                let scales = column_scales(&input, col, plot_x, &path)?;
                let spec_err = |e: Error| match e {
                    Error::SpecError { .. } => e,
                    other => Error::spec(path.clone(), other.to_string()),
                };
                for (p, band) in bands.iter().enumerate() {
                    let rect = Rect::new(plot_x.0, band.y, plot_x.1 - plot_x.0, band.height);
                    let panel = Panel {
                        index: p,
                        rect,
                        rows: panel_rows(&layout, p, *band, row_h),
                        row_height: row_h,
                    };
                    let y_scale = scales
                        .y
                        .as_ref()
                        .map(|s| s.with_range((band.bottom() - BAND_PAD, band.y + BAND_PAD)));
                    let out = match &input {
                        GlyphColumnInput::Dot(v) => render_dot(
                            v,
                            &scales.x,
                            &layout,
                            &panel,
                            &glyph_style,
                            DotOptions {
                                reference_line: col.options.reference_line,
                            },
                        ),
                        GlyphColumnInput::Bar(v) => render_bar(v, &scales.x, &layout, &panel, &glyph_style),
                        GlyphColumnInput::Arrow(v) => render_arrow(v, &scales.x, &layout, &panel, &glyph_style),
                        GlyphColumnInput::BoxPlot(v) => render_boxplot(v, &scales.x, &layout, &panel, &glyph_style),
                        GlyphColumnInput::TimeSeries { periods, values } => render_timeseries(
                            periods,
                            values,
                            &scales.x,
                            y_scale.as_ref().expect("series has a y scale"),
                            &layout,
                            &panel,
                            &glyph_style,
                        ),
                        GlyphColumnInput::Scatter(v) => render_scatter(
                            v,
                            &scales.x,
                            y_scale.as_ref().expect("scatter has a y scale"),
                            &layout,
                            &panel,
                            &glyph_style,
                        ),
                    }
                    .map_err(spec_err)?;
                    shapes.extend(out);
                }
                let top = bands[0].y - 2.0;
                let bottom = bands.last().expect("at least one band").bottom() + 2.0;
                shapes.extend(axis(&scales.x, top, -1.0, &ink));
                shapes.extend(axis(&scales.x, bottom, 1.0, &ink));
            }
        }
        scene.extend(shapes.into_iter().map(|s| s.in_column(ci, col.kind)));
    }

    scene.shapes.sort_by_key(|s| paint_layer(s.tag.role));
    if scene
        .shapes
        .iter()
        .any(|s| s.geometry.numbers().iter().any(|v| !v.is_finite()))
    {
        return Err(Error::BadGeometry("composed scene"));
    }
    scene.clamp();
    Ok(Composition {
        layout,
        scene,
        warnings,
        bands,
        columns,
    })
}

/// A horizontal axis line with ticks and labels; `dir` is -1 above the panels, 1 below.
fn axis(scale: &Scale, y: f64, dir: f64, ink: &Color) -> Vec<Shape> {
    let mut out = vec![line_shape(
        scale.range.0,
        y,
        scale.range.1,
        y,
        Style::stroke(ink, 0.6),
        Tag::new(Role::Axis),
    )];
    for (t, label) in scale.ticks.iter().zip(&scale.labels) {
        let x = scale.map(*t);
        out.push(line_shape(
            x,
            y,
            x,
            y + dir * 3.0,
            Style::stroke(ink, 0.6),
            Tag::new(Role::Tick).value(*t),
        ));
        let ty = if dir < 0.0 { y - 5.0 } else { y + 11.0 };
        out.push(text_shape(
            x,
            ty,
            label,
            7.0,
            Anchor::Middle,
            false,
            ink,
            Tag::new(Role::TickLabel).value(*t),
        ));
    }
    out
}

/// Swatch and name per row of one legend panel.
pub fn render_legend_column(
    layout: &LinkedLayout,
    panel: &Panel,
    name_style: NameStyle,
    style: &GlyphStyle,
) -> Vec<Shape> {
    let size = (panel.row_height * 0.6).clamp(3.0, 9.0);
    let swatch = (panel.row_height * 0.7).clamp(2.0, 10.0);
    let text_x = panel.rect.x + 4.0 + swatch + 4.0;
    let room = panel.rect.right() - text_x - 2.0;
    let mut out = Vec::new();
    for (region, y) in &panel.rows {
        let slot = layout.slot(*region).unwrap_or(Slot::NoData);
        let color = style.palette.color(slot);
        out.push(Shape::new(
            Geometry::Rect(Rect::new(panel.rect.x + 4.0, y - swatch / 2.0, swatch, swatch)),
            Style::fill(color),
            Tag::new(Role::Swatch).panel(panel.index).region(*region),
        ));
        let full = region.name();
        let name = match name_style {
            NameStyle::Full => full,
            NameStyle::Abbrev => region.code(),
            // rough sans-serif advance width
            NameStyle::Auto if full.chars().count() as f64 * size * 0.55 <= room => full,
            NameStyle::Auto => region.code(),
        };
        out.push(text_shape(
            text_x,
            y + size * 0.35,
            name,
            size,
            Anchor::Start,
            slot == Slot::Median,
            &style.ink,
            Tag::new(Role::Label).panel(panel.index).region(*region),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::default_atlas;
    use crate::table::parse_table;

    fn table51() -> RegionTable {
        let body: String = RegionId::all()
            .map(|r| format!("{},{},{}\n", r.code(), r.index() as f64 * 1.5, 50.0 - r.index() as f64))
            .collect();
        parse_table(&format!("state,a,b\n{body}"), "state").unwrap()
    }

    fn minimal() -> ChartSpec {
        ChartSpec::new(
            "Test",
            SortSpec::descending("a"),
            vec![
                ColumnSpec::map(),
                ColumnSpec::legend(),
                ColumnSpec::new(ColumnKind::Dot, "A", &["a"]),
            ],
        )
    }

    fn count(scene: &Scene, role: Role, kind: ColumnKind) -> usize {
        scene
            .shapes
            .iter()
            .filter(|s| s.tag.role == role && s.tag.kind == Some(kind))
            .count()
    }

    #[test]
    fn minimal_panels() {
        let c = compose_chart(&minimal(), &table51(), &default_atlas()).unwrap();
        for kind in [ColumnKind::Map, ColumnKind::Legend, ColumnKind::Dot] {
            assert_eq!(count(&c.scene, Role::PanelFrame, kind), 11);
        }
        assert_eq!(count(&c.scene, Role::Mark, ColumnKind::Dot), 51);
        assert_eq!(c.scene.with_role(Role::MedianBand).count(), 1);
        assert_eq!(c.scene.with_role(Role::MedianSeparator).count(), 2);
        assert!(c.warnings.is_empty());
    }

    #[test]
    fn spec_errors_carry_paths() {
        let t = table51();
        let mut s = minimal();
        s.columns.remove(0);
        assert!(matches!(compose(&s, &t, &default_atlas()), Err(Error::SpecError { path, .. }) if path == "columns"));
        let mut s = minimal();
        s.columns[2].bindings = vec!["nope".into()];
        assert!(matches!(compose(&s, &t, &default_atlas()),
            Err(Error::SpecError { path, .. }) if path == "columns[2].bindings[0]"));
        let mut s = minimal();
        s.columns[2].kind = ColumnKind::Arrow;
        assert!(matches!(compose(&s, &t, &default_atlas()),
            Err(Error::SpecError { path, .. }) if path == "columns[2].bindings"));
    }

    #[test]
    fn sort_column_not_shown_warns() {
        let mut s = minimal();
        s.columns[2].bindings = vec!["b".into()];
        let c = compose_chart(&s, &table51(), &default_atlas()).unwrap();
        assert_eq!(c.warnings.len(), 1);
    }

    #[test]
    fn deterministic_and_in_bounds() {
        let t = table51();
        let a = compose(&minimal(), &t, &default_atlas()).unwrap();
        let b = compose(&minimal(), &t, &default_atlas()).unwrap();
        assert_eq!(a, b);
        for s in &a.shapes {
            for v in s.geometry.numbers() {
                assert!(v.is_finite() && v >= 0.0 && v <= a.width.max(a.height));
            }
        }
    }

    #[test]
    fn paint_order() {
        let scene = compose(&minimal(), &table51(), &default_atlas()).unwrap();
        let layers: Vec<u8> = scene.shapes.iter().map(|s| paint_layer(s.tag.role)).collect();
        assert!(layers.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn legend_names() {
        let c = compose_chart(&minimal(), &table51(), &default_atlas()).unwrap();
        let dc = RegionId::from_code("DC").unwrap();
        let p = c.layout.group_of[&dc];
        let panel = Panel {
            index: p,
            rect: Rect::new(0.0, 0.0, 30.0, 100.0),
            rows: vec![(dc, 10.0)],
            row_height: 20.0,
        };
        let style = GlyphStyle::default();
        let label = |ns| {
            render_legend_column(&c.layout, &panel, ns, &style)
                .into_iter()
                .find_map(|s| match s.geometry {
                    Geometry::Text { content, .. } => Some(content),
                    _ => None,
                })
                .unwrap()
        };
        assert_eq!(label(NameStyle::Abbrev), "DC");
        assert_eq!(label(NameStyle::Full), "District of Columbia");
        assert_eq!(label(NameStyle::Auto), "DC");
    }

    #[test]
    fn unranked_get_trailing_panel() {
        let mut csv = String::from("state,a\n");
        for r in RegionId::all() {
            if ["TX", "AK", "CA"].contains(&r.code()) {
                csv.push_str(&format!("{},NA\n", r.code()));
            } else {
                csv.push_str(&format!("{},{}\n", r.code(), r.index()));
            }
        }
        let t = parse_table(&csv, "state").unwrap();
        let c = compose_chart(&minimal(), &t, &default_atlas()).unwrap();
        assert_eq!(count(&c.scene, Role::PanelFrame, ColumnKind::Dot), c.layout.group_count() + 1);
        assert_eq!(c.scene.with_role(Role::NoDataSeparator).count(), 1);
        assert_eq!(c.scene.with_role(Role::MedianBand).count(), 0);
        assert_eq!(count(&c.scene, Role::Annotation, ColumnKind::Dot), 3);
    }
}
