use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop at vertex {0}; graphs must be simple")]
    Loop(usize),

    #[error("{what}: {got} exceeds the cap of {cap}")]
    Capacity {
        what: &'static str,
        got: usize,
        cap: usize,
    },

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("edge list parse error on line {line}: {reason}")]
    EdgeList { line: usize, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("target q={q} lies outside |q| <= 2^{k}")]
    TargetOutOfRange { k: usize, q: i128 },

    /// A computed value contradicts a proved identity. Always a bug.
    #[error("verification failed: {0}")]
    Defect(String),
}

pub type Result<T> = std::result::Result<T, Error>;
