//! Deterministic SVG serialization of a [`Scene`].
//!
//! One element per line, attributes sorted by name, every number written with a fixed
//! number of decimals (ties round to even), LF line endings.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scene::{Color, Geometry, Point, Scene, Shape};

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    /// 0..=6.
    pub decimal_places: usize,
    /// Writes the scene title as a `<title>` element.
    pub embed_title: bool,
    pub background: Option<Color>,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            decimal_places: 2,
            embed_title: true,
            background: Some(Color::from("#FFFFFF")),
        }
    }
}

pub const MAX_DECIMAL_PLACES: usize = 6;

/// Fixed-point formatting; `-0.00` becomes `0.00`.
pub fn format_number(v: f64, decimals: usize) -> String {
    let s = format!("{v:.decimals$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

pub fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

struct Element {
    name: &'static str,
    attrs: Vec<(&'static str, String)>,
    text: Option<String>,
}

impl Element {
    fn write(mut self, out: &mut String) {
        self.attrs.sort_by(|a, b| a.0.cmp(b.0));
        out.push('<');
        out.push_str(self.name);
        for (k, v) in &self.attrs {
            let _ = write!(out, " {k}=\"{}\"", escape(v));
        }
        match self.text {
            Some(t) => {
                let _ = write!(out, ">{}</{}>", escape(&t), self.name);
            }
            None => out.push_str("/>"),
        }
        out.push('\n');
    }
}

fn points(pts: &[Point], d: usize) -> String {
    pts.iter()
        .map(|p| format!("{},{}", format_number(p.x, d), format_number(p.y, d)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn path_data(rings: &[Vec<Point>], d: usize) -> String {
    let mut out = String::new();
    for ring in rings {
        for (i, p) in ring.iter().enumerate() {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push(if i == 0 { 'M' } else { 'L' });
            let _ = write!(out, "{} {}", format_number(p.x, d), format_number(p.y, d));
        }
        if !ring.is_empty() {
            out.push_str(" Z");
        }
    }
    out
}

fn shape_element(shape: &Shape, d: usize) -> Result<Element> {
    let name = shape.geometry.element_name();
    let style = &shape.style;
    let finite = shape.geometry.numbers().iter().all(|v| v.is_finite())
        && style.stroke_width.is_none_or(f64::is_finite)
        && style.opacity.is_none_or(f64::is_finite);
    if !finite {
        return Err(Error::BadGeometry(name));
    }
    let n = |v: f64| format_number(v, d);
    let mut attrs: Vec<(&'static str, String)> = vec![("class", shape.tag.class_string())];
    let mut text = None;
    match &shape.geometry {
        Geometry::Rect(r) => attrs.extend([
            ("x", n(r.x)),
            ("y", n(r.y)),
            ("width", n(r.width)),
            ("height", n(r.height)),
        ]),
        Geometry::Circle { cx, cy, r } => {
            attrs.extend([("cx", n(*cx)), ("cy", n(*cy)), ("r", n(*r))])
        }
        Geometry::Line { x1, y1, x2, y2 } => attrs.extend([
            ("x1", n(*x1)),
            ("y1", n(*y1)),
            ("x2", n(*x2)),
            ("y2", n(*y2)),
        ]),
        Geometry::Polyline(pts) | Geometry::Polygon(pts) => attrs.push(("points", points(pts, d))),
        Geometry::Path(rings) => {
            attrs.push(("d", path_data(rings, d)));
            attrs.push(("fill-rule", "evenodd".to_string()));
        }
        Geometry::Text {
            x,
            y,
            content,
            size,
            anchor,
            bold,
        } => {
            attrs.extend([
                ("x", n(*x)),
                ("y", n(*y)),
                ("font-size", n(*size)),
                ("text-anchor", anchor.as_str().to_string()),
            ]);
            if *bold {
                attrs.push(("font-weight", "bold".to_string()));
            }
            text = Some(content.clone());
        }
    }
    if let Some(c) = &style.fill {
        attrs.push(("fill", c.to_string()));
    } else if !matches!(shape.geometry, Geometry::Text { .. }) {
        attrs.push(("fill", "none".to_string()));
    }
    if let Some(c) = &style.stroke {
        attrs.push(("stroke", c.to_string()));
    }
    if let Some(w) = style.stroke_width {
        attrs.push(("stroke-width", n(w)));
    }
    if let Some(o) = style.opacity {
        attrs.push(("opacity", n(o)));
    }
    if style.dashed {
        attrs.push(("stroke-dasharray", "3 2".to_string()));
    }
    Ok(Element { name, attrs, text })
}

/// Serializes the scene. Fails on any non-finite number before writing anything.
pub fn emit_svg(scene: &Scene, options: &SvgOptions) -> Result<String> {
    let d = options.decimal_places;
    if d > MAX_DECIMAL_PLACES {
        return Err(Error::spec(
            "output.decimal_places",
            format!("must be between 0 and {MAX_DECIMAL_PLACES}"),
        ));
    }
    if !(scene.width.is_finite() && scene.height.is_finite()) {
        return Err(Error::BadGeometry("svg"));
    }
    let elements = scene
        .shapes
        .iter()
        .map(|s| shape_element(s, d))
        .collect::<Result<Vec<_>>>()?;
    let (w, h) = (format_number(scene.width, d), format_number(scene.height, d));
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let mut root = vec![
        ("xmlns", "http://www.w3.org/2000/svg".to_string()),
        ("width", w.clone()),
        ("height", h.clone()),
        ("viewBox", format!("0 0 {w} {h}")),
        ("font-family", "sans-serif".to_string()),
    ];
    root.sort_by(|a, b| a.0.cmp(b.0));
    out.push_str("<svg");
    for (k, v) in root {
        let _ = write!(out, " {k}=\"{}\"", escape(&v));
    }
    out.push_str(">\n");
    if options.embed_title {
        if let Some(t) = &scene.title {
            let _ = writeln!(out, "<title>{}</title>", escape(t));
        }
    }
    if let Some(bg) = &options.background {
        Element {
            name: "rect",
            attrs: vec![
                ("class", "background".to_string()),
                ("fill", bg.to_string()),
                ("x", format_number(0.0, d)),
                ("y", format_number(0.0, d)),
                ("width", w),
                ("height", h),
            ],
            text: None,
        }
        .write(&mut out);
    }
    for e in elements {
        e.write(&mut out);
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::{Anchor, Rect, Role, Style, Tag};

    fn circle(cx: f64, cy: f64) -> Shape {
        Shape::new(
            Geometry::Circle { cx, cy, r: 1.0 },
            Style::fill(&Color::from("#000000")),
            Tag::new(Role::Mark),
        )
    }

    fn elements(svg: &str) -> usize {
        roxmltree::Document::parse(svg)
            .unwrap()
            .descendants()
            .filter(|n| n.is_element())
            .count()
    }

    #[test]
    fn empty_scene() {
        let s = Scene::new(10.0, 20.0);
        let svg = emit_svg(&s, &SvgOptions::default()).unwrap();
        assert_eq!(elements(&svg), 2);
        let bare = SvgOptions {
            background: None,
            ..SvgOptions::default()
        };
        assert_eq!(elements(&emit_svg(&s, &bare).unwrap()), 1);
    }

    #[test]
    fn half_even_rounding() {
        let mut s = Scene::new(10.0, 10.0);
        s.push(circle(1.005, 2.0));
        let svg = emit_svg(&s, &SvgOptions::default()).unwrap();
        assert!(svg.contains("cx=\"1.00\""), "{svg}");
        assert!(svg.contains("cy=\"2.00\""));
        assert_eq!(format_number(0.125, 2), "0.12");
        assert_eq!(format_number(0.375, 2), "0.38");
        assert_eq!(format_number(2.5, 0), "2");
        assert_eq!(format_number(-0.001, 2), "0.00");
        assert_eq!(format_number(1e21, 1), "1000000000000000000000.0");
    }

    #[test]
    fn attributes_sorted_and_escaped() {
        let mut s = Scene::new(10.0, 10.0);
        s.title = Some("A & B".into());
        s.push(Shape::new(
            Geometry::Text {
                x: 1.0,
                y: 2.0,
                content: "<x>".into(),
                size: 7.0,
                anchor: Anchor::Middle,
                bold: true,
            },
            Style::fill(&Color::from("#333333")),
            Tag::new(Role::Label),
        ));
        let svg = emit_svg(&s, &SvgOptions::default()).unwrap();
        assert!(svg.contains("<title>A &amp; B</title>"));
        let line = svg.lines().find(|l| l.starts_with("<text")).unwrap();
        assert_eq!(
            line,
            "<text class=\"label\" fill=\"#333333\" font-size=\"7.00\" font-weight=\"bold\" \
             text-anchor=\"middle\" x=\"1.00\" y=\"2.00\">&lt;x&gt;</text>"
        );
        let doc = roxmltree::Document::parse(&svg).unwrap();
        for node in doc.descendants().filter(|n| n.is_element()) {
            let names: Vec<&str> = node.attributes().map(|a| a.name()).collect();
            let mut sorted = names.clone();
            sorted.sort();
            assert_eq!(names, sorted);
        }
        assert!(!svg.contains('\r'));
    }

    #[test]
    fn element_count_and_precision() {
        let mut s = Scene::new(100.0, 100.0);
        s.title = Some("t".into());
        for i in 0..7 {
            s.push(circle(i as f64 * 1.3, 5.0));
        }
        s.push(Shape::new(
            Geometry::Rect(Rect::new(0.0, 0.0, 1.0, 1.0)),
            Style::default(),
            Tag::new(Role::PanelFrame),
        ));
        s.push(Shape::new(
            Geometry::Path(vec![vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(1.0, 1.0),
                Point::new(0.0, 0.0),
            ]]),
            Style::fill(&Color::from("#E6E6E6")),
            Tag::new(Role::MapFill),
        ));
        for d in 0..=6 {
            let opts = SvgOptions {
                decimal_places: d,
                ..SvgOptions::default()
            };
            let svg = emit_svg(&s, &opts).unwrap();
            assert_eq!(elements(&svg), s.shapes.len() + 3);
            let cx = svg.split("cx=\"").nth(2).unwrap().split('"').next().unwrap();
            let decimals = cx.split('.').nth(1).map_or(0, str::len);
            assert_eq!(decimals, d);
        }
        let bad = SvgOptions {
            decimal_places: 7,
            ..SvgOptions::default()
        };
        assert!(matches!(emit_svg(&s, &bad), Err(Error::SpecError { .. })));
    }

    #[test]
    fn non_finite_rejected() {
        let mut s = Scene::new(10.0, 10.0);
        s.push(circle(f64::NAN, 1.0));
        assert_eq!(
            emit_svg(&s, &SvgOptions::default()),
            Err(Error::BadGeometry("circle"))
        );
    }
}
