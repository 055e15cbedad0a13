//! Command-line front end: config-driven rendering, bundled demos and baseline charts.
//!
//! Exit codes: 0 success, 1 validation error, 2 I/O error.

pub mod adapters;
pub mod config;
pub mod demos;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use micromap::alt_charts::{render_barchart_alpha, render_choropleth, BreakRule};
use micromap::atlas::default_atlas;
use micromap::compose::{compose_chart, ChartSpec};
use micromap::svg::{emit_svg, SvgOptions};
use micromap::table::{parse_table, RegionTable};
use micromap::verify::check_chart;
use thiserror::Error;

use crate::adapters::{load_config_data, read, SnapshotError};
use crate::config::{parse_config, ConfigError};
use crate::demos::{build_demo, DemoOutcome, DEMOS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_IO: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "micromap", version, about = "Linked micromap charts as SVG")]
pub struct Cli {
    /// Print nothing on success.
    #[arg(long, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Render a chart described by a JSON config.
    Render {
        #[arg(long)]
        config: PathBuf,
        /// Output file; overrides the config's output.path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Data file; overrides the config's data.path.
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Check a config and its data without writing anything.
    Validate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Render one of the bundled case-study charts.
    Demo {
        #[arg(value_parser = DEMOS)]
        name: String,
        /// Defaults to `<name>.svg` in the working directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Snapshot directory; overrides MICROMAP_DATA_DIR.
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Render a comparison chart (alphabetical bars or a choropleth) of one column.
    Baseline {
        #[arg(value_enum)]
        kind: BaselineKind,
        /// Region-keyed CSV file.
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        column: String,
        #[arg(long, default_value = "State")]
        region_column: String,
        /// Equal-interval classes for the choropleth.
        #[arg(long, default_value_t = 5)]
        classes: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaselineKind {
    Bars,
    Choropleth,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Snapshot(#[from] SnapshotError),
    #[error(transparent)]
    Engine(#[from] micromap::Error),
    #[error("chart failed its layout checks:\n  {}", .0.join("\n  "))]
    Invariant(Vec<String>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Snapshot(SnapshotError::Missing { .. }) => EXIT_IO,
            _ => EXIT_INVALID,
        }
    }
}

/// The snapshot directory: `MICROMAP_DATA_DIR`, else the repository's `data/`.
pub fn default_data_dir() -> PathBuf {
    std::env::var_os("MICROMAP_DATA_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data"))
}

/// A rendered chart ready to be written.
pub struct Rendered {
    pub svg: String,
    pub warnings: Vec<String>,
    pub shapes: usize,
}

/// Composes, checks every layout invariant, and serializes.
pub fn render_chart(spec: &ChartSpec, table: &RegionTable, svg: &SvgOptions) -> Result<Rendered, CliError> {
    let chart = compose_chart(spec, table, &default_atlas())?;
    let problems = check_chart(&chart.scene, &chart.layout, spec.group_size);
    if !problems.is_empty() {
        return Err(CliError::Invariant(problems));
    }
    Ok(Rendered {
        svg: emit_svg(&chart.scene, svg)?,
        warnings: chart.warnings,
        shapes: chart.scene.shapes.len(),
    })
}

/// Renders a bundled demo in memory. The inner `Err` carries instructions when optional
/// input is missing.
pub fn render_demo(name: &str, data_dir: &Path) -> Result<Result<Rendered, String>, CliError> {
    match build_demo(name, data_dir)? {
        DemoOutcome::Ready(d) => Ok(Ok(render_chart(&d.spec, &d.table, &SvgOptions::default())?)),
        DemoOutcome::NeedsInput(msg) => Ok(Err(msg)),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_config(path: &Path, data: Option<PathBuf>) -> Result<config::ChartConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut cfg = parse_config(&text)?;
    cfg.resolve_paths(path.parent().unwrap_or(Path::new(".")));
    if let Some(d) = data {
        cfg.data.path = d;
    }
    Ok(cfg)
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let quiet = cli.quiet;
    let mut progress = |msg: String| {
        if !quiet {
            let _ = writeln!(out, "{msg}");
        }
    };
    match cli.command {
        Command::Render { config, out: out_path, data } => {
            let cfg = load_config(&config, data)?;
            let target = out_path
                .or(cfg.output.clone())
                .ok_or_else(|| CliError::Usage("no output path: pass --out or set output.path".into()))?;
            let table = load_config_data(&cfg.data)?;
            let r = render_chart(&cfg.spec, &table, &cfg.svg)?;
            for w in &r.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            write_file(&target, &r.svg)?;
            progress(format!("wrote {} ({} shapes)", target.display(), r.shapes));
        }
        Command::Validate { config, data } => {
            let cfg = load_config(&config, data)?;
            let table = load_config_data(&cfg.data)?;
            let r = render_chart(&cfg.spec, &table, &cfg.svg)?;
            for w in &r.warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            progress(format!("{}: ok", config.display()));
        }
        Command::Demo { name, out: out_path, data } => {
            let dir = data.unwrap_or_else(default_data_dir);
            match render_demo(&name, &dir)? {
                Ok(r) => {
                    let target = out_path.unwrap_or_else(|| PathBuf::from(format!("{name}.svg")));
                    write_file(&target, &r.svg)?;
                    progress(format!("wrote {} ({} shapes)", target.display(), r.shapes));
                }
                Err(instructions) => {
                    let _ = writeln!(err, "{instructions}");
                }
            }
        }
        Command::Baseline {
            kind,
            data,
            column,
            region_column,
            classes,
            out: target,
        } => {
            let table = parse_table(&read(&data)?, &region_column)
                .map_err(|e| SnapshotError::Malformed {
                    file: data.clone(),
                    message: e.to_string(),
                })?;
            let scene = match kind {
                BaselineKind::Bars => render_barchart_alpha(&table, &column)?,
                BaselineKind::Choropleth => {
                    render_choropleth(&default_atlas(), &table, &column, &BreakRule::Auto(classes))?
                }
            };
            write_file(&target, &emit_svg(&scene, &SvgOptions::default())?)?;
            progress(format!("wrote {}", target.display()));
        }
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_INVALID
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match execute(cli, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
