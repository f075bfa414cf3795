use std::path::PathBuf;

use crate::geometry::VertexId;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid disk {id}: {reason}")]
    InvalidDisk { id: VertexId, reason: String },

    #[error("invalid disk set: {0}")]
    InvalidDiskSet(String),

    #[error("tolerance must be finite and >= 0, got {0}")]
    InvalidTolerance(f64),

    #[error("dimension cap must be >= 1, got {0}")]
    InvalidDimension(usize),

    #[error("invalid simplex {0:?}: vertices must be non-empty and distinct")]
    InvalidSimplex(Vec<VertexId>),

    #[error("vertex {0} is not in the disk set")]
    UnknownVertex(VertexId),

    #[error("level {requested} has not been built (complex holds levels 0..={built})")]
    MissingLevel { requested: usize, built: usize },

    #[error("invalid scenario config: {field}: {reason}")]
    InvalidConfig { field: &'static str, reason: String },

    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
