//! Resolution-independent shape lists. Shape order is paint order.

use std::fmt;

use crate::region::RegionId;

/// A color as written into the output, e.g. `#D55E00`. Compared as strings.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Color(pub String);

impl Color {
    pub fn new(s: impl Into<String>) -> Self {
        Color(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Color {
    fn from(s: &str) -> Self {
        Color(s.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x: f64,
    pub y: f64,
    pub width: f64,
    pub height: f64,
}

impl Rect {
    pub fn new(x: f64, y: f64, width: f64, height: f64) -> Self {
        Rect {
            x,
            y,
            width,
            height,
        }
    }

    pub fn right(&self) -> f64 {
        self.x + self.width
    }

    pub fn bottom(&self) -> f64 {
        self.y + self.height
    }

    pub fn center_y(&self) -> f64 {
        self.y + self.height / 2.0
    }

    pub fn inset(&self, dx: f64, dy: f64) -> Rect {
        Rect::new(
            self.x + dx,
            self.y + dy,
            (self.width - 2.0 * dx).max(0.0),
            (self.height - 2.0 * dy).max(0.0),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    Start,
    Middle,
    End,
}

impl Anchor {
    pub fn as_str(self) -> &'static str {
        match self {
            Anchor::Start => "start",
            Anchor::Middle => "middle",
            Anchor::End => "end",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Geometry {
    Rect(Rect),
    Circle { cx: f64, cy: f64, r: f64 },
    Line { x1: f64, y1: f64, x2: f64, y2: f64 },
    Polyline(Vec<Point>),
    Polygon(Vec<Point>),
    /// Closed rings drawn as one path (`M … Z` per ring).
    Path(Vec<Vec<Point>>),
    Text {
        x: f64,
        y: f64,
        content: String,
        size: f64,
        anchor: Anchor,
        bold: bool,
    },
}

impl Geometry {
    pub fn element_name(&self) -> &'static str {
        match self {
            Geometry::Rect(_) => "rect",
            Geometry::Circle { .. } => "circle",
            Geometry::Line { .. } => "line",
            Geometry::Polyline(_) => "polyline",
            Geometry::Polygon(_) => "polygon",
            Geometry::Path(_) => "path",
            Geometry::Text { .. } => "text",
        }
    }

    fn coords_mut(&mut self) -> Vec<(&mut f64, &mut f64)> {
        match self {
            Geometry::Rect(r) => vec![(&mut r.x, &mut r.y)],
            Geometry::Circle { cx, cy, .. } => vec![(cx, cy)],
            Geometry::Line { x1, y1, x2, y2 } => vec![(x1, y1), (x2, y2)],
            Geometry::Polyline(pts) | Geometry::Polygon(pts) => {
                pts.iter_mut().map(|p| (&mut p.x, &mut p.y)).collect()
            }
            Geometry::Path(rings) => rings
                .iter_mut()
                .flatten()
                .map(|p| (&mut p.x, &mut p.y))
                .collect(),
            Geometry::Text { x, y, .. } => vec![(x, y)],
        }
    }

    /// Every number that ends up in the output.
    pub fn numbers(&self) -> Vec<f64> {
        match self {
            Geometry::Rect(r) => vec![r.x, r.y, r.width, r.height],
            Geometry::Circle { cx, cy, r } => vec![*cx, *cy, *r],
            Geometry::Line { x1, y1, x2, y2 } => vec![*x1, *y1, *x2, *y2],
            Geometry::Polyline(pts) | Geometry::Polygon(pts) => {
                pts.iter().flat_map(|p| [p.x, p.y]).collect()
            }
            Geometry::Path(rings) => rings.iter().flatten().flat_map(|p| [p.x, p.y]).collect(),
            Geometry::Text { x, y, size, .. } => vec![*x, *y, *size],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Style {
    pub fill: Option<Color>,
    pub stroke: Option<Color>,
    pub stroke_width: Option<f64>,
    pub opacity: Option<f64>,
    pub dashed: bool,
}

impl Style {
    pub fn fill(color: &Color) -> Self {
        Style {
            fill: Some(color.clone()),
            ..Style::default()
        }
    }

    pub fn stroke(color: &Color, width: f64) -> Self {
        Style {
            stroke: Some(color.clone()),
            stroke_width: Some(width),
            ..Style::default()
        }
    }

    pub fn with_stroke(mut self, color: &Color, width: f64) -> Self {
        self.stroke = Some(color.clone());
        self.stroke_width = Some(width);
        self
    }

    pub fn dashed(mut self) -> Self {
        self.dashed = true;
        self
    }
}

/// What a chart column shows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ColumnKind {
    Map,
    Legend,
    Dot,
    Bar,
    Arrow,
    TimeSeries,
    BoxPlot,
    Scatter,
}

impl ColumnKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ColumnKind::Map => "map",
            ColumnKind::Legend => "legend",
            ColumnKind::Dot => "dot",
            ColumnKind::Bar => "bar",
            ColumnKind::Arrow => "arrow",
            ColumnKind::TimeSeries => "timeseries",
            ColumnKind::BoxPlot => "boxplot",
            ColumnKind::Scatter => "scatter",
        }
    }

    pub fn is_glyph(self) -> bool {
        !matches!(self, ColumnKind::Map | ColumnKind::Legend)
    }
}

/// Semantic role of a shape; used by invariant checks and written out as a class token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Background,
    PanelFrame,
    MedianBand,
    MedianSeparator,
    NoDataSeparator,
    Guide,
    /// Horizontal-axis tick guide inside a panel; `Tag::value` carries the tick.
    GridX,
    /// Vertical-axis tick guide inside a panel.
    GridY,
    ZeroLine,
    Reference,
    MapFill,
    MapStroke,
    /// Unhighlighted scatter point.
    Context,
    /// The primary region-colored mark of a glyph (one per region and panel, except time
    /// series segments split by gaps).
    Mark,
    /// Secondary mark parts (arrowheads, whiskers, medians, outliers).
    MarkDetail,
    Swatch,
    Axis,
    Tick,
    TickLabel,
    Label,
    Annotation,
    Header,
    Title,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Background => "background",
            Role::PanelFrame => "panel",
            Role::MedianBand => "median-band",
            Role::MedianSeparator => "median-sep",
            Role::NoDataSeparator => "nodata-sep",
            Role::Guide => "guide",
            Role::GridX => "grid-x",
            Role::GridY => "grid-y",
            Role::ZeroLine => "zero",
            Role::Reference => "reference",
            Role::MapFill => "map-fill",
            Role::MapStroke => "map-stroke",
            Role::Context => "context",
            Role::Mark => "mark",
            Role::MarkDetail => "mark-detail",
            Role::Swatch => "swatch",
            Role::Axis => "axis",
            Role::Tick => "tick",
            Role::TickLabel => "tick-label",
            Role::Label => "label",
            Role::Annotation => "annotation",
            Role::Header => "header",
            Role::Title => "title",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Tag {
    pub role: Role,
    pub column: Option<usize>,
    pub kind: Option<ColumnKind>,
    pub panel: Option<usize>,
    pub region: Option<RegionId>,
    /// Data value behind the shape where one exists (tick value, mark value).
    pub value: Option<f64>,
}

impl Tag {
    pub fn new(role: Role) -> Self {
        Tag {
            role,
            column: None,
            kind: None,
            panel: None,
            region: None,
            value: None,
        }
    }

    pub fn panel(mut self, panel: usize) -> Self {
        self.panel = Some(panel);
        self
    }

    pub fn region(mut self, region: RegionId) -> Self {
        self.region = Some(region);
        self
    }

    pub fn value(mut self, value: f64) -> Self {
        self.value = Some(value);
        self
    }

    pub fn column(mut self, column: usize, kind: ColumnKind) -> Self {
        self.column = Some(column);
        self.kind = Some(kind);
        self
    }

    /// Space-separated class tokens written to the output.
    pub fn class_string(&self) -> String {
        let mut parts = vec![self.role.as_str().to_string()];
        if let Some(k) = self.kind {
            parts.push(format!("k-{}", k.as_str()));
        }
        if let Some(c) = self.column {
            parts.push(format!("c{c}"));
        }
        if let Some(p) = self.panel {
            parts.push(format!("p{p}"));
        }
        if let Some(r) = self.region {
            parts.push(format!("r-{}", r.code()));
        }
        parts.join(" ")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Shape {
    pub geometry: Geometry,
    pub style: Style,
    pub tag: Tag,
}

impl Shape {
    pub fn new(geometry: Geometry, style: Style, tag: Tag) -> Self {
        Shape {
            geometry,
            style,
            tag,
        }
    }

    /// The color that carries the region linkage: fill when present, else stroke.
    pub fn paint(&self) -> Option<&Color> {
        self.style
            .fill
            .as_ref()
            .filter(|c| c.as_str() != "none")
            .or(self.style.stroke.as_ref())
    }

    /// Tags every shape with a column index and kind. Used when merging column output.
    pub fn in_column(mut self, column: usize, kind: ColumnKind) -> Self {
        self.tag.column = Some(column);
        self.tag.kind = Some(kind);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub width: f64,
    pub height: f64,
    pub title: Option<String>,
    pub shapes: Vec<Shape>,
}

impl Scene {
    pub fn new(width: f64, height: f64) -> Self {
        Scene {
            width,
            height,
            title: None,
            shapes: Vec::new(),
        }
    }

    pub fn push(&mut self, shape: Shape) {
        self.shapes.push(shape);
    }

    pub fn extend(&mut self, shapes: impl IntoIterator<Item = Shape>) {
        self.shapes.extend(shapes);
    }

    /// Clamps every coordinate into the canvas.
    pub fn clamp(&mut self) {
        let (w, h) = (self.width, self.height);
        for s in &mut self.shapes {
            for (x, y) in s.geometry.coords_mut() {
                *x = x.clamp(0.0, w);
                *y = y.clamp(0.0, h);
            }
            if let Geometry::Rect(r) = &mut s.geometry {
                r.width = r.width.clamp(0.0, w - r.x);
                r.height = r.height.clamp(0.0, h - r.y);
            }
        }
    }

    pub fn with_role(&self, role: Role) -> impl Iterator<Item = &Shape> {
        self.shapes.iter().filter(move |s| s.tag.role == role)
    }
}
