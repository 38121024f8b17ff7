use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("input has no header row")]
    MissingHeader,
    #[error("empty universe: the input has a header but no data rows")]
    EmptyUniverse,
    #[error("row {row}: expected {expected} fields, found {found}")]
    MalformedRow {
        row: u64,
        expected: usize,
        found: usize,
    },
    #[error("row {row}, column `{column}`: cannot parse {value:?} as an integer")]
    BadNumber {
        row: u64,
        column: String,
        value: String,
    },
    #[error("schema error: {0}")]
    Schema(String),
    #[error("unknown attribute `{0}`")]
    UnknownAttribute(String),
    #[error("invalid binning for `{attribute}`: {reason}")]
    Binning { attribute: String, reason: String },
    #[error("attribute set is empty")]
    EmptyAttributeSet,
    #[error("attribute index {index} out of range for {len} conditional attributes")]
    AttributeOutOfRange { index: usize, len: usize },
    #[error("attribute `{0}` is continuous; bin it with apply_binning before extracting rules")]
    ContinuousAttribute(String),
    #[error("universe of {rows} rows exceeds the explicit-matrix cap of {cap}; use discernibility_scan")]
    MatrixTooLarge { rows: usize, cap: usize },
    #[error("invalid condition on `{attribute}`: {reason}")]
    InvalidCondition { attribute: String, reason: String },
    #[error("duplicate condition on attribute `{0}`")]
    DuplicateCondition(String),
    #[error("class counts are all zero")]
    ZeroCounts,
    #[error("{0}")]
    Invalid(String),
}
