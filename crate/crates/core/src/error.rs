use thiserror::Error;

use crate::region::RegionId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("csv: {0}")]
    Csv(String),
    #[error("region {0} appears in more than one row")]
    DuplicateRegion(RegionId),
    #[error("cannot parse cell at row {row}, column {column:?}: {text:?}")]
    CellParse {
        row: usize,
        column: String,
        text: String,
    },
    #[error("no column named {0:?}")]
    MissingColumn(String),
    #[error("column {0:?} already exists")]
    NameClash(String),
    #[error("series binding needs at least one column")]
    EmptyBinding,
    #[error("column {column:?} is {found}, expected {expected}")]
    WrongKind {
        column: String,
        expected: &'static str,
        found: &'static str,
    },
    #[error("column {0:?} has no values")]
    EmptyColumn(String),
    #[error("unknown region {0:?}")]
    UnknownRegion(String),
    #[error("nothing to sort: every value of {0:?} is missing")]
    EmptySort(String),
    #[error("atlas: {0}")]
    AtlasParse(String),
    #[error("atlas lacks regions: {0:?}")]
    IncompleteAtlas(Vec<RegionId>),
    #[error("extent ({0}, {1}) is not finite")]
    BadExtent(f64, f64),
    #[error("no samples")]
    EmptySamples,
    #[error("value {value} lies outside scale domain ({min}, {max})")]
    DomainOverflow { value: f64, min: f64, max: f64 },
    #[error("series periods do not match the column's periods")]
    SeriesMismatch,
    #[error("{path}: {message}")]
    SpecError { path: String, message: String },
    #[error("non-finite coordinate in {0}")]
    BadGeometry(&'static str),
    #[error("class boundaries must be strictly increasing")]
    BadBreaks,
}

impl Error {
    pub(crate) fn spec(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::SpecError {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Csv(err.to_string())
    }
}
