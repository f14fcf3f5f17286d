use std::path::PathBuf;

use thiserror::Error;

use crate::graph::NodeId;

pub type Result<T, E = LexnetError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum LexnetError {
    #[error("failed to access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("language mismatch: document is `{document}`, {resource} is `{resource_language}`")]
    LanguageMismatch {
        document: String,
        resource: &'static str,
        resource_language: String,
    },

    #[error("label `{0}` is already interned")]
    DuplicateLabel(String),

    #[error("node {node} out of range for graph with {n} nodes")]
    NodeOutOfRange { node: NodeId, n: usize },

    #[error("{k} links requested but at most {max} fit on {n} nodes")]
    TooManyLinks { n: usize, k: usize, max: usize },

    #[error("invalid random-graph request: {0}")]
    InvalidErSpec(String),

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("no pair of nodes is connected by a path")]
    NoPaths,

    #[error("measure `{0}` is undefined")]
    UndefinedMeasure(&'static str),

    #[error("document `{0}` contains no words after preprocessing")]
    EmptyDocument(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("book {book}: {source}")]
    Book {
        book: String,
        #[source]
        source: Box<LexnetError>,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl LexnetError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        LexnetError::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn in_book(self, book: impl Into<String>) -> Self {
        LexnetError::Book {
            book: book.into(),
            source: Box::new(self),
        }
    }

    /// Process exit code: 3 for internal invariant violations, 2 for everything
    /// caused by input.
    pub fn exit_code(&self) -> i32 {
        match self {
            LexnetError::Invariant(_) => 3,
            LexnetError::Book { source, .. } => source.exit_code(),
            _ => 2,
        }
    }
}
