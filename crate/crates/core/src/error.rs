use std::path::PathBuf;

use crate::controller::Metrics;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list is empty")]
    EmptyGraph,

    #[error("block size must be at least 1")]
    ZeroBlockSize,

    #[error("vertex {vertex} out of range (vertex count {vertex_count})")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("invalid job: {0}")]
    InvalidJob(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("job {0} has not converged")]
    NotConverged(usize),

    #[error("superstep limit {limit} exceeded before all jobs converged")]
    SuperstepLimit { limit: usize, partial: Box<Metrics> },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
