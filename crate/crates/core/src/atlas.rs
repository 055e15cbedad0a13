//! Planar region geometry and the small-map column.
//!
//! The interchange format is a GeoJSON-style `FeatureCollection` in pre-projected
//! planar units, y growing downward. Each feature carries `code`, `name` and `fips`
//! properties and a `Polygon` or `MultiPolygon` geometry without holes. An optional
//! top-level `insets` array of `{code, translate: [dx, dy], scale}` moves a region at
//! load time: every point becomes `p * scale + translate`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::layout::{LinkedLayout, Side};
use crate::palette::Palette;
use crate::region::RegionId;
use crate::scene::{Color, Geometry, Point, Rect, Role, Shape, Style, Tag};

pub use crate::region::region_lookup;

static DEFAULT_ATLAS: &str = include_str!("../assets/us_atlas.json");

pub type Ring = Vec<Point>;

#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct Inset {
    pub code: String,
    pub translate: [f64; 2],
    pub scale: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Atlas {
    regions: BTreeMap<RegionId, Vec<Ring>>,
    insets: Vec<Inset>,
    bounds: Rect,
}

#[derive(Deserialize)]
struct Document {
    #[serde(rename = "type")]
    kind: String,
    features: Vec<Feature>,
    #[serde(default)]
    insets: Vec<Inset>,
}

#[derive(Deserialize)]
struct Feature {
    properties: Properties,
    geometry: GeometryDoc,
}

#[derive(Deserialize)]
struct Properties {
    code: String,
}

#[derive(Deserialize)]
#[serde(tag = "type", content = "coordinates")]
enum GeometryDoc {
    Polygon(Vec<Vec<[f64; 2]>>),
    MultiPolygon(Vec<Vec<Vec<[f64; 2]>>>),
}

fn ring_from(code: &str, raw: &[[f64; 2]]) -> Result<Ring> {
    if raw.len() < 4 {
        return Err(Error::AtlasParse(format!(
            "{code}: ring has {} positions, need at least 4",
            raw.len()
        )));
    }
    if raw.first() != raw.last() {
        return Err(Error::AtlasParse(format!("{code}: ring is not closed")));
    }
    if raw.iter().flatten().any(|v| !v.is_finite()) {
        return Err(Error::AtlasParse(format!("{code}: non-finite coordinate")));
    }
    Ok(raw.iter().map(|[x, y]| Point::new(*x, *y)).collect())
}

fn polygon_rings(code: &str, poly: &[Vec<[f64; 2]>]) -> Result<Ring> {
    match poly {
        [outer] => ring_from(code, outer),
        [] => Err(Error::AtlasParse(format!("{code}: empty polygon"))),
        _ => Err(Error::AtlasParse(format!("{code}: polygons with holes are not supported"))),
    }
}

pub fn load_atlas(document: &str) -> Result<Atlas> {
    let doc: Document =
        serde_json::from_str(document).map_err(|e| Error::AtlasParse(e.to_string()))?;
    if doc.kind != "FeatureCollection" {
        return Err(Error::AtlasParse(format!("expected FeatureCollection, got {}", doc.kind)));
    }
    let mut regions: BTreeMap<RegionId, Vec<Ring>> = BTreeMap::new();
    for feature in &doc.features {
        let code = feature.properties.code.as_str();
        let id = RegionId::from_code(code)?;
        if id.code() != code {
            return Err(Error::UnknownRegion(code.to_string()));
        }
        let rings = match &feature.geometry {
            GeometryDoc::Polygon(poly) => vec![polygon_rings(code, poly)?],
            GeometryDoc::MultiPolygon(polys) => polys
                .iter()
                .map(|p| polygon_rings(code, p))
                .collect::<Result<_>>()?,
        };
        if rings.is_empty() {
            return Err(Error::AtlasParse(format!("{code}: no polygons")));
        }
        if regions.insert(id, rings).is_some() {
            return Err(Error::AtlasParse(format!("{code}: duplicate feature")));
        }
    }
    let missing: Vec<RegionId> = RegionId::all().filter(|r| !regions.contains_key(r)).collect();
    if !missing.is_empty() {
        return Err(Error::IncompleteAtlas(missing));
    }
    for inset in &doc.insets {
        let id = RegionId::from_code(&inset.code)?;
        if !(inset.scale.is_finite() && inset.scale > 0.0)
            || !inset.translate.iter().all(|v| v.is_finite())
        {
            return Err(Error::AtlasParse(format!("{}: bad inset", inset.code)));
        }
        let [dx, dy] = inset.translate;
        for ring in regions.get_mut(&id).expect("completeness checked") {
            for p in ring.iter_mut() {
                *p = Point::new(p.x * inset.scale + dx, p.y * inset.scale + dy);
            }
        }
    }
    let bounds = bounds_of(regions.values().flatten().flatten());
    Ok(Atlas {
        regions,
        insets: doc.insets,
        bounds,
    })
}

fn bounds_of<'a>(points: impl Iterator<Item = &'a Point>) -> Rect {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in points {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    Rect::new(x0, y0, x1 - x0, y1 - y0)
}

/// The bundled 51-region atlas.
pub fn default_atlas() -> Atlas {
    load_atlas(DEFAULT_ATLAS).expect("bundled atlas is valid")
}

/// An interchange document with one unit square per region on a grid `columns` wide,
/// in code order. Handy as a fixture: stable, tiny and trivially checkable.
pub fn square_grid_document(columns: usize) -> String {
    let mut features = Vec::new();
    for (i, r) in RegionId::all().enumerate() {
        let (x, y) = ((i % columns) as f64, (i / columns) as f64);
        let mut ring = String::new();
        for (px, py) in [(x, y), (x + 1.0, y), (x + 1.0, y + 1.0), (x, y + 1.0), (x, y)] {
            let _ = write!(ring, "{}[{px},{py}]", if ring.is_empty() { "" } else { "," });
        }
        let meta = r.meta();
        features.push(format!(
            r#"{{"type":"Feature","properties":{{"code":"{}","name":"{}","fips":"{}"}},"geometry":{{"type":"Polygon","coordinates":[[{ring}]]}}}}"#,
            meta.code, meta.name, meta.fips
        ));
    }
    format!(r#"{{"type":"FeatureCollection","features":[{}]}}"#, features.join(","))
}

impl Atlas {
    pub fn bounds(&self) -> Rect {
        self.bounds
    }

    pub fn insets(&self) -> &[Inset] {
        &self.insets
    }

    pub fn rings(&self, region: RegionId) -> &[Ring] {
        &self.regions[&region]
    }

    pub fn regions(&self) -> impl Iterator<Item = (RegionId, &[Ring])> {
        self.regions.iter().map(|(r, v)| (*r, v.as_slice()))
    }

    /// Affine map fitting the atlas bounds into `frame`, centered, aspect preserved.
    pub fn fit(&self, frame: Rect) -> impl Fn(Point) -> Point {
        let b = self.bounds;
        let s = (frame.width / b.width).min(frame.height / b.height);
        let ox = frame.x + (frame.width - b.width * s) / 2.0;
        let oy = frame.y + (frame.height - b.height * s) / 2.0;
        move |p: Point| Point::new(ox + (p.x - b.x) * s, oy + (p.y - b.y) * s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MapMode {
    #[default]
    GroupOnly,
    Cumulative,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MiniMapStyle {
    pub mode: MapMode,
    pub palette: Palette,
    pub context_fill: Color,
    pub cumulative_tint: Color,
    pub stroke: Color,
    pub stroke_width: f64,
    /// Douglas-Peucker tolerance in canvas units; 0 keeps every vertex.
    pub simplify: f64,
}

impl Default for MiniMapStyle {
    fn default() -> Self {
        MiniMapStyle {
            mode: MapMode::GroupOnly,
            palette: Palette::default(),
            context_fill: Color::from("#E6E6E6"),
            cumulative_tint: Color::from("#F3DFA2"),
            stroke: Color::from("#7F7F7F"),
            stroke_width: 0.3,
            simplify: 0.3,
        }
    }
}

/// Whether `group`'s regions are tinted on `panel`'s map in cumulative mode: groups
/// already shown between the panel and its side's extreme. The median panel tints nothing.
pub fn cumulative_tinted(layout: &LinkedLayout, panel: usize, group: usize) -> bool {
    let plan = &layout.plan;
    if panel >= plan.group_count() {
        return false;
    }
    match plan.side(panel) {
        Side::Upper => group < panel && plan.side(group) == Side::Upper,
        Side::Lower => group > panel && plan.side(group) == Side::Lower,
        Side::Median => false,
    }
}

fn perpendicular(p: Point, a: Point, b: Point) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len = (dx * dx + dy * dy).sqrt();
    if len == 0.0 {
        ((p.x - a.x).powi(2) + (p.y - a.y).powi(2)).sqrt()
    } else {
        ((p.x - a.x) * dy - (p.y - a.y) * dx).abs() / len
    }
}

fn douglas_peucker(points: &[Point], tolerance: f64, keep: &mut [bool]) {
    if points.len() < 3 {
        return;
    }
    let (first, last) = (points[0], points[points.len() - 1]);
    let (idx, dist) = points[1..points.len() - 1]
        .iter()
        .enumerate()
        .map(|(i, p)| (i + 1, perpendicular(*p, first, last)))
        .fold((0, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
    if dist > tolerance {
        keep[idx] = true;
        douglas_peucker(&points[..=idx], tolerance, &mut keep[..=idx]);
        douglas_peucker(&points[idx..], tolerance, &mut keep[idx..]);
    }
}

/// Simplifies a closed ring; falls back to the input if fewer than four positions survive.
pub fn simplify_ring(ring: &[Point], tolerance: f64) -> Ring {
    if tolerance <= 0.0 || ring.len() <= 4 {
        return ring.to_vec();
    }
    // split at the vertex farthest from the start so both halves are open chains
    let far = (1..ring.len() - 1)
        .max_by(|a, b| {
            let da = (ring[*a].x - ring[0].x).hypot(ring[*a].y - ring[0].y);
            let db = (ring[*b].x - ring[0].x).hypot(ring[*b].y - ring[0].y);
            da.total_cmp(&db)
        })
        .expect("ring has interior vertices");
    let mut keep = vec![false; ring.len()];
    keep[0] = true;
    keep[far] = true;
    keep[ring.len() - 1] = true;
    douglas_peucker(&ring[..=far], tolerance, &mut keep[..=far]);
    douglas_peucker(&ring[far..], tolerance, &mut keep[far..]);
    let out: Ring = ring
        .iter()
        .zip(&keep)
        .filter(|(_, k)| **k)
        .map(|(p, _)| *p)
        .collect();
    if out.len() < 4 {
        ring.to_vec()
    } else {
        out
    }
}

/// One small map for a row panel. `panel` past the last group is the no-data block.
/// Fills come first (one path per region), then a single path with every border.
pub fn render_minimap(
    atlas: &Atlas,
    layout: &LinkedLayout,
    panel: usize,
    style: &MiniMapStyle,
    frame: Rect,
) -> Vec<Shape> {
    let fit = atlas.fit(frame);
    let members = layout.members(panel);
    let mut fills = Vec::with_capacity(51);
    let mut borders = Vec::new();
    for (region, rings) in atlas.regions() {
        let projected: Vec<Ring> = rings
            .iter()
            .map(|ring| {
                let pts: Ring = ring.iter().map(|p| fit(*p)).collect();
                simplify_ring(&pts, style.simplify)
            })
            .collect();
        let fill = if members.contains(&region) {
            style.palette.color(layout.slot(region).expect("member has a slot"))
        } else if style.mode == MapMode::Cumulative
            && layout
                .group_of
                .get(&region)
                .is_some_and(|g| cumulative_tinted(layout, panel, *g))
        {
            &style.cumulative_tint
        } else {
            &style.context_fill
        };
        borders.extend(projected.iter().cloned());
        fills.push(Shape::new(
            Geometry::Path(projected),
            Style::fill(fill),
            Tag::new(Role::MapFill).panel(panel).region(region),
        ));
    }
    let mut stroke = Style::stroke(&style.stroke, style.stroke_width);
    stroke.fill = Some(Color::from("none"));
    fills.push(Shape::new(
        Geometry::Path(borders),
        stroke,
        Tag::new(Role::MapStroke).panel(panel),
    ));
    fills
}
