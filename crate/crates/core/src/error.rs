use std::path::PathBuf;

use thiserror::Error;

use crate::distance::TokenError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("k = {k} is out of range for {n} points (need 2 <= k <= n)")]
    InvalidK { k: usize, n: usize },

    #[error("distance matrix must be square and nonempty (got {rows} rows, row {row} has {len} entries)")]
    Shape { rows: usize, row: usize, len: usize },

    #[error("negative distance {value} at ({i}, {j})")]
    NegativeDistance { i: usize, j: usize, value: String },

    #[error("a diversity score needs at least two points, got {0}")]
    TooFewPoints(usize),

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("path sums may overflow: {n} vertices with maximum weight {max_weight}")]
    Overflow { n: usize, max_weight: String },

    #[error("input graph contains a cycle")]
    Cyclic,

    #[error("flow network has no feasible flow meeting its lower bounds")]
    Infeasible,

    #[error("flow network arc {arc} has lower bound above capacity")]
    BadBounds { arc: usize },

    #[error("{context}: {message}")]
    Parse { context: String, message: String },

    #[error("{context}: bad value `{token}` ({kind})")]
    BadToken {
        context: String,
        token: String,
        kind: TokenError,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            context: context.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
