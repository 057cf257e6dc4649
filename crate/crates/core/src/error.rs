use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("loop arc ({0}, {0}) is not allowed")]
    LoopArc(usize),
    #[error("arcs ({0}, {1}) and ({1}, {0}) form a 2-cycle")]
    TwoCycle(usize, usize),
    #[error("duplicate arc ({0}, {1})")]
    DuplicateArc(usize, usize),
    #[error("vertex {0} out of range for {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("forest is not final over its host digraph")]
    NotFinal,
    #[error("decomposition length {found} does not match required length {required}")]
    LengthMismatch { required: usize, found: usize },
    #[error("unsupported pattern ({0}, {1}, {2})")]
    UnsupportedPattern(usize, usize, usize),
    #[error("internal construction error: {0}")]
    InternalConstructionError(String),
    #[error("instance has {0} vertices, oracle limit is {1}")]
    LimitExceeded(usize, usize),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
