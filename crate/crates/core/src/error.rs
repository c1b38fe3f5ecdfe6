//! Error types shared across the pipeline.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error in {path}: {source}")]
    Csv {
        path: String,
        #[source]
        source: csv::Error,
    },

    #[error("missing required column '{column}' in {path}")]
    MissingColumn { column: String, path: String },

    #[error("bad config: {0}")]
    Config(String),

    #[error("empty_person: person has no trips")]
    EmptyPerson,

    #[error("degenerate_labels: no class has both positives and negatives")]
    DegenerateLabels,

    #[error("empty_batch: every task is fully masked in this batch")]
    EmptyBatch,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("standardizer applied before fitting")]
    StandardizerNotFitted,

    #[error("unknown feature family '{0}'")]
    UnknownFamily(String),

    #[error("rank deficiency in design matrix: collinear columns {0:?}")]
    RankDeficient(Vec<String>),

    #[error("undefined statistic: {0}")]
    DegenerateInput(String),

    #[error("split error: {0}")]
    Split(String),

    #[error("subsample fraction {fraction} of {n} rows yields 0 rows")]
    EmptySubsample { fraction: f64, n: usize },

    #[error("infeasible cohort spec: {0}")]
    InfeasibleSpec(String),

    #[error("serialization error: {0}")]
    Serialize(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
