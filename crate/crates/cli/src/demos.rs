//! The six bundled case-study charts.

use std::path::Path;

use micromap::atlas::MapMode;
use micromap::compose::{ChartSpec, ColumnOptions, ColumnSpec};
use micromap::layout::SortSpec;
use micromap::scene::ColumnKind;
use micromap::table::RegionTable;

use crate::adapters::{acs_adapter, ers_adapter, pew_table, qcew_adapter, SnapshotError, PEW_FILE};

pub const DEMOS: [&str; 6] = [
    "acs-dot",
    "acs-timeseries",
    "acs-pew",
    "qcew-arrows",
    "ers-snap",
    "ers-boxscatter",
];

pub struct Demo {
    pub spec: ChartSpec,
    pub table: RegionTable,
}

#[allow(clippy::large_enum_variant)]
pub enum DemoOutcome {
    Ready(Demo),
    /// Optional input is absent; the text says how to supply it.
    NeedsInput(String),
}

fn col(kind: ColumnKind, header: &str, bindings: &[&str]) -> ColumnSpec {
    ColumnSpec::new(kind, header, bindings)
}

fn acs_columns(with_series: bool) -> Vec<ColumnSpec> {
    let mut cols = vec![
        ColumnSpec::map(),
        ColumnSpec::legend(),
        col(ColumnKind::Dot, "Response rate\n2022 (%)", &["response_2022"]),
    ];
    if with_series {
        cols.push(col(ColumnKind::TimeSeries, "Response rate\n2010-2022 (%)", &["response"]));
    }
    cols
}

pub fn build_demo(name: &str, data_dir: &Path) -> Result<DemoOutcome, SnapshotError> {
    let chart = |title: &str, sort: &str, columns, table| {
        DemoOutcome::Ready(Demo {
            spec: ChartSpec::new(title, SortSpec::descending(sort), columns),
            table,
        })
    };
    Ok(match name {
        "acs-dot" => chart(
            "ACS household response rates, 2022",
            "response_2022",
            acs_columns(false),
            acs_adapter(data_dir)?,
        ),
        "acs-timeseries" => {
            let mut d = Demo {
                spec: ChartSpec::new(
                    "ACS household response rates, 2010-2022",
                    SortSpec::descending("response_2022"),
                    acs_columns(true),
                ),
                table: acs_adapter(data_dir)?,
            };
            d.spec.map_mode = MapMode::Cumulative;
            DemoOutcome::Ready(d)
        }
        "acs-pew" => {
            let Some(pew) = pew_table(data_dir)? else {
                return Ok(DemoOutcome::NeedsInput(format!(
                    "acs-pew needs the Pew Religious Landscape Study \"pro small government\" \
                     shares, which are not bundled.\nSave them as {} with columns \
                     State,pro_small_government (state names or USPS codes, percent values) \
                     and run the demo again.",
                    data_dir.join(PEW_FILE).display()
                )));
            };
            let table = acs_adapter(data_dir)?
                .join(&pew)
                .map_err(|e| SnapshotError::Malformed {
                    file: data_dir.join(PEW_FILE),
                    message: e.to_string(),
                })?;
            let mut columns = acs_columns(true);
            columns.push(col(ColumnKind::Bar, "Decline 2010-2022\n(points)", &["decline"]));
            columns.push(col(
                ColumnKind::Dot,
                "Pro small\ngovernment (%)",
                &["pro_small_government"],
            ));
            let mut spec = ChartSpec::new(
                "ACS response rates and views on government size",
                SortSpec::descending("response_2022"),
                columns,
            );
            spec.map_mode = MapMode::Cumulative;
            spec.width = 1300.0;
            DemoOutcome::Ready(Demo { spec, table })
        }
        "qcew-arrows" => {
            let mut spec = ChartSpec::new(
                "Leisure and hospitality employment, over-the-year change",
                SortSpec::descending("oty_2020Q1"),
                vec![
                    ColumnSpec::map(),
                    ColumnSpec::legend(),
                    col(ColumnKind::Dot, "Change 2020Q1\n(%)", &["oty_2020Q1"]).with_options(
                        ColumnOptions {
                            reference_line: Some(0.0),
                            ..ColumnOptions::default()
                        },
                    ),
                    col(ColumnKind::TimeSeries, "Change by quarter\n2019Q4-2022Q1 (%)", &["oty"]),
                    col(ColumnKind::Arrow, "2020Q1 to 2022Q1\n(%)", &["oty:2020Q1", "oty:2022Q1"]),
                ],
            );
            spec.width = 1150.0;
            DemoOutcome::Ready(Demo {
                spec,
                table: qcew_adapter(data_dir)?,
            })
        }
        "ers-snap" => chart(
            "SNAP participation and food insecurity",
            "PCH_SNAP_12_17",
            vec![
                ColumnSpec::map(),
                ColumnSpec::legend(),
                col(ColumnKind::Dot, "SNAP participants\nchange 2012-17 (%)", &["PCH_SNAP_12_17"])
                    .with_options(ColumnOptions {
                        reference_line: Some(0.0),
                        ..ColumnOptions::default()
                    }),
                col(
                    ColumnKind::Bar,
                    "Food insecurity change\n2012-14 to 2015-17 (points)",
                    &["CH_FOODINSEC_14_17"],
                ),
            ],
            ers_adapter(data_dir)?,
        ),
        "ers-boxscatter" => chart(
            "Low access to stores and food insecurity",
            "PCT_LACCESS_HHNV15",
            vec![
                ColumnSpec::map(),
                ColumnSpec::legend(),
                col(
                    ColumnKind::BoxPlot,
                    "County change in low access\n2010-15 (%)",
                    &["county_low_access_change"],
                ),
                col(
                    ColumnKind::Scatter,
                    "Food insecurity 2015-17 (%) by\nno-car low access 2015 (%)",
                    &["PCT_LACCESS_HHNV15", "FOODINSEC_15_17"],
                ),
            ],
            ers_adapter(data_dir)?,
        ),
        other => {
            return Err(SnapshotError::Malformed {
                file: data_dir.to_path_buf(),
                message: format!("unknown demo {other:?}; expected one of {}", DEMOS.join(", ")),
            })
        }
    })
}
