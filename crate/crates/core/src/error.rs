use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid point cloud: {0}")]
    InvalidPointCloud(String),

    #[error("no pairs: distance statistics need at least 2 points, got {0}")]
    NoPairs(usize),

    #[error("distance matrices differ in size ({0} vs {1})")]
    SizeMismatch(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "homology dimension {requested} needs simplices of dimension {}, but the complex stops at dimension {max_dimension}",
        requested + 1
    )]
    HomologyDimension { requested: usize, max_dimension: usize },

    #[error("PCA needs 1 <= k <= min(n-1, d) = {limit}, got k = {k}")]
    ComponentCount { k: usize, limit: usize },

    #[error("missing required column {0:?}")]
    MissingColumn(String),

    #[error("row {row}: cannot parse {column:?} value {value:?}")]
    BadCell { row: usize, column: String, value: String },

    #[error("duplicate record for {jurisdiction} {year}-W{week:02}")]
    DuplicateRecord { jurisdiction: String, year: i32, week: u32 },

    #[error("unknown jurisdictions: {}", .0.join(", "))]
    UnknownJurisdictions(Vec<String>),

    #[error("{what} line {line}: {message}")]
    Syntax { what: &'static str, line: usize, message: String },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}
