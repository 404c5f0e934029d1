use thiserror::Error;

/// Errors produced by graph construction, loading, and coloring checks.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {num_vertices} vertices")]
    VertexOutOfRange { vertex: u64, num_vertices: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: entry ({row}, {col}) exceeds declared dimensions {rows}x{cols}")]
    EntryOutOfBounds {
        line: usize,
        row: u64,
        col: u64,
        rows: u64,
        cols: u64,
    },

    #[error("unsupported format: {0}")]
    UnsupportedFormat(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("coloring has {found} entries but graph has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },

    #[error("vertex {vertex} is uncolored")]
    IncompleteColoring { vertex: u32 },

    #[error("{algorithm} produced an improper coloring ({violations} violations)")]
    Verification { algorithm: String, violations: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
