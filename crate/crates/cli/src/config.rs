//! Strict JSON chart configuration.

use std::path::{Path, PathBuf};

use micromap::atlas::MapMode;
use micromap::compose::{validate_structure, ChartSpec, ColumnOptions, ColumnSpec, NameStyle};
use micromap::layout::{Direction, SortSpec, DEFAULT_GROUP_SIZE};
use micromap::palette::Palette;
use micromap::scene::{Color, ColumnKind};
use micromap::svg::{SvgOptions, MAX_DECIMAL_PLACES};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("config syntax error at line {line}, column {column}: {message}")]
    ConfigSyntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown key {0:?}")]
    UnknownKey(String),
    #[error("bad value at {path}: {message}")]
    BadValue { path: String, message: String },
    #[error(transparent)]
    Spec(#[from] micromap::Error),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    title: String,
    data: DataDoc,
    sort: SortDoc,
    #[serde(default)]
    group_size: Option<usize>,
    #[serde(default)]
    map_mode: MapModeDoc,
    #[serde(default)]
    palette: Option<PaletteDoc>,
    columns: Vec<ColumnDoc>,
    #[serde(default)]
    output: OutputDoc,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DataConfig {
    pub path: PathBuf,
    #[serde(default = "default_region_column")]
    pub region_column: String,
    /// Scalar columns bound into series columns after loading.
    #[serde(default)]
    pub series: Vec<SeriesBinding>,
    /// Further region-keyed CSV files outer-joined onto the main table.
    #[serde(default)]
    pub join: Vec<JoinSource>,
    /// Long-format CSV files read into sample-list columns.
    #[serde(default)]
    pub samples: Vec<SamplesSource>,
}

type DataDoc = DataConfig;

fn default_region_column() -> String {
    "State".to_string()
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesBinding {
    pub name: String,
    pub columns: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JoinSource {
    pub path: PathBuf,
    #[serde(default = "default_region_column")]
    pub region_column: String,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplesSource {
    pub path: PathBuf,
    #[serde(default = "default_region_column")]
    pub region_column: String,
    pub value_column: String,
    pub name: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SortDoc {
    column: String,
    #[serde(default)]
    direction: DirectionDoc,
}

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
enum DirectionDoc {
    Ascending,
    #[default]
    Descending,
}

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
enum MapModeDoc {
    #[default]
    GroupOnly,
    Cumulative,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PaletteDoc {
    #[serde(default)]
    slots: Option<Vec<String>>,
    #[serde(default)]
    median: Option<String>,
    #[serde(default)]
    no_data: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
enum KindDoc {
    Map,
    Legend,
    Dot,
    Bar,
    Arrow,
    Timeseries,
    Boxplot,
    Scatter,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum HeaderDoc {
    One(String),
    Lines(Vec<String>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ColumnDoc {
    kind: KindDoc,
    #[serde(default)]
    header: Option<HeaderDoc>,
    #[serde(default)]
    bindings: Vec<String>,
    #[serde(default)]
    options: OptionsDoc,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OptionsDoc {
    #[serde(default)]
    reference_line: Option<f64>,
    #[serde(default)]
    weight: Option<f64>,
    #[serde(default)]
    name_style: Option<NameStyleDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
enum NameStyleDoc {
    Full,
    Abbrev,
    Auto,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputDoc {
    #[serde(default)]
    path: Option<PathBuf>,
    #[serde(default)]
    width: Option<f64>,
    #[serde(default)]
    height: Option<f64>,
    #[serde(default)]
    decimal_places: Option<usize>,
}

/// A parsed configuration: the chart, where its data comes from and where it goes.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartConfig {
    pub spec: ChartSpec,
    pub data: DataConfig,
    pub output: Option<PathBuf>,
    pub svg: SvgOptions,
}

impl ChartConfig {
    /// Resolves relative data and output paths against `base` (the config's directory).
    pub fn resolve_paths(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        fix(&mut self.data.path);
        self.data.join.iter_mut().for_each(|j| fix(&mut j.path));
        self.data.samples.iter_mut().for_each(|s| fix(&mut s.path));
        if let Some(o) = self.output.as_mut() {
            fix(o);
        }
    }
}

fn check_color(path: &str, c: &str) -> Result<Color, ConfigError> {
    let hex = c.strip_prefix('#').unwrap_or("");
    if (hex.len() == 3 || hex.len() == 6) && hex.chars().all(|ch| ch.is_ascii_hexdigit()) {
        Ok(Color::from(c))
    } else {
        Err(ConfigError::BadValue {
            path: path.to_string(),
            message: format!("{c:?} is not a #RGB or #RRGGBB color"),
        })
    }
}

fn classify(err: serde_path_to_error::Error<serde_json::Error>) -> ConfigError {
    let path = err.path().to_string();
    let inner = err.inner();
    if inner.is_syntax() || inner.is_eof() {
        return ConfigError::ConfigSyntax {
            line: inner.line(),
            column: inner.column(),
            message: inner.to_string(),
        };
    }
    let message = inner.to_string();
    if let Some(rest) = message.strip_prefix("unknown field `") {
        let key = rest.split('`').next().unwrap_or_default();
        let full = if path == "." || path.is_empty() {
            key.to_string()
        } else if path.ends_with(key) {
            path
        } else {
            format!("{path}.{key}")
        };
        return ConfigError::UnknownKey(full);
    }
    ConfigError::BadValue { path, message }
}

/// Strict parse: unknown keys are rejected, defaults applied, anatomy checked.
pub fn parse_config(document: &str) -> Result<ChartConfig, ConfigError> {
    let de = &mut serde_json::Deserializer::from_str(document);
    let doc: Document = serde_path_to_error::deserialize(de).map_err(classify)?;

    let mut palette = Palette::default();
    if let Some(p) = doc.palette {
        if let Some(slots) = p.slots {
            if slots.is_empty() {
                return Err(ConfigError::BadValue {
                    path: "palette.slots".into(),
                    message: "at least one color".into(),
                });
            }
            palette.slots = slots
                .iter()
                .enumerate()
                .map(|(i, c)| check_color(&format!("palette.slots[{i}]"), c))
                .collect::<Result<_, _>>()?;
        }
        if let Some(c) = p.median {
            palette.median = check_color("palette.median", &c)?;
        }
        if let Some(c) = p.no_data {
            palette.no_data = check_color("palette.no_data", &c)?;
        }
    }

    let columns = doc
        .columns
        .into_iter()
        .map(|c| {
            let kind = match c.kind {
                KindDoc::Map => ColumnKind::Map,
                KindDoc::Legend => ColumnKind::Legend,
                KindDoc::Dot => ColumnKind::Dot,
                KindDoc::Bar => ColumnKind::Bar,
                KindDoc::Arrow => ColumnKind::Arrow,
                KindDoc::Timeseries => ColumnKind::TimeSeries,
                KindDoc::Boxplot => ColumnKind::BoxPlot,
                KindDoc::Scatter => ColumnKind::Scatter,
            };
            let header = match c.header {
                None => Vec::new(),
                Some(HeaderDoc::One(s)) => s.lines().map(str::to_string).collect(),
                Some(HeaderDoc::Lines(v)) => v,
            };
            let defaults = ColumnOptions::default();
            ColumnSpec {
                kind,
                header,
                bindings: c.bindings,
                options: ColumnOptions {
                    reference_line: c.options.reference_line,
                    weight: c.options.weight.unwrap_or(defaults.weight),
                    name_style: match c.options.name_style {
                        None => defaults.name_style,
                        Some(NameStyleDoc::Full) => NameStyle::Full,
                        Some(NameStyleDoc::Abbrev) => NameStyle::Abbrev,
                        Some(NameStyleDoc::Auto) => NameStyle::Auto,
                    },
                },
            }
        })
        .collect();

    let mut spec = ChartSpec::new(
        &doc.title,
        SortSpec {
            column: doc.sort.column,
            direction: match doc.sort.direction {
                DirectionDoc::Ascending => Direction::Ascending,
                DirectionDoc::Descending => Direction::Descending,
            },
        },
        columns,
    );
    spec.group_size = doc.group_size.unwrap_or(DEFAULT_GROUP_SIZE);
    spec.map_mode = match doc.map_mode {
        MapModeDoc::GroupOnly => MapMode::GroupOnly,
        MapModeDoc::Cumulative => MapMode::Cumulative,
    };
    spec.palette = palette;
    if let Some(w) = doc.output.width {
        spec.width = w;
    }
    if let Some(h) = doc.output.height {
        spec.height = h;
    }
    let mut svg = SvgOptions::default();
    if let Some(d) = doc.output.decimal_places {
        if d > MAX_DECIMAL_PLACES {
            return Err(ConfigError::BadValue {
                path: "output.decimal_places".into(),
                message: format!("must be between 0 and {MAX_DECIMAL_PLACES}"),
            });
        }
        svg.decimal_places = d;
    }
    validate_structure(&spec)?;
    Ok(ChartConfig {
        spec,
        data: doc.data,
        output: doc.output.path,
        svg,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "title": "Response rates",
        "data": {"path": "rates.csv"},
        "sort": {"column": "2022"},
        "columns": [{"kind": "map"}, {"kind": "legend"}, {"kind": "dot", "bindings": ["2022"]}]
    }"#;

    #[test]
    fn minimal_gets_defaults() {
        let c = parse_config(MINIMAL).unwrap();
        assert_eq!(c.spec.group_size, 5);
        assert_eq!(c.spec.sort.direction, Direction::Descending);
        assert_eq!(c.spec.map_mode, MapMode::GroupOnly);
        assert_eq!(c.data.region_column, "State");
        assert_eq!(c.svg.decimal_places, 2);
        assert_eq!(c.spec.columns.len(), 3);
    }

    #[test]
    fn missing_map_is_spec_error() {
        let doc = MINIMAL.replace(r#"{"kind": "map"}, "#, "");
        assert!(matches!(
            parse_config(&doc),
            Err(ConfigError::Spec(micromap::Error::SpecError { .. }))
        ));
    }

    #[test]
    fn unknown_keys() {
        let doc = MINIMAL.replace(r#""title""#, r#""colour": "red", "title""#);
        assert_eq!(parse_config(&doc), Err(ConfigError::UnknownKey("colour".into())));
        let doc = MINIMAL.replace(r#""column": "2022""#, r#""column": "2022", "order": 1"#);
        assert_eq!(parse_config(&doc), Err(ConfigError::UnknownKey("sort.order".into())));
    }

    #[test]
    fn bad_values() {
        let doc = MINIMAL.replace(r#""kind": "dot""#, r#""kind": "pie""#);
        match parse_config(&doc) {
            Err(ConfigError::BadValue { path, .. }) => assert_eq!(path, "columns[2].kind"),
            other => panic!("{other:?}"),
        }
        let doc = MINIMAL.replace(r#""column": "2022""#, r#""column": "2022", "direction": "up""#);
        assert!(matches!(parse_config(&doc), Err(ConfigError::BadValue { path, .. }) if path == "sort.direction"));
        let doc = MINIMAL.replace(r#""title": "Response rates","#, r#""title": "t", "output": {"decimal_places": 9},"#);
        assert!(matches!(parse_config(&doc), Err(ConfigError::BadValue { path, .. }) if path == "output.decimal_places"));
        let doc = MINIMAL.replace(r#""title": "Response rates","#, r##""title": "t", "palette": {"median": "black"},"##);
        assert!(matches!(parse_config(&doc), Err(ConfigError::BadValue { path, .. }) if path == "palette.median"));
    }

    #[test]
    fn syntax_error_position() {
        match parse_config("{\n  \"title\": ,\n}") {
            Err(ConfigError::ConfigSyntax { line, column, .. }) => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn two_line_headers_and_options() {
        let doc = MINIMAL.replace(
            r#"{"kind": "dot", "bindings": ["2022"]}"#,
            r#"{"kind": "dot", "header": ["Response", "rate 2022"], "bindings": ["2022"],
                "options": {"reference_line": 0, "weight": 2}}"#,
        );
        let c = parse_config(&doc).unwrap();
        assert_eq!(c.spec.columns[2].header, vec!["Response", "rate 2022"]);
        assert_eq!(c.spec.columns[2].options.reference_line, Some(0.0));
        assert_eq!(c.spec.columns[2].options.weight, 2.0);
    }

    #[test]
    fn relative_paths_follow_config() {
        let mut c = parse_config(MINIMAL).unwrap();
        c.resolve_paths(Path::new("/cfg"));
        assert_eq!(c.data.path, PathBuf::from("/cfg/rates.csv"));
    }
}
