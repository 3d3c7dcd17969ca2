use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("cycle: declared relations imply {0} < {0}")]
    Cycle(String),

    #[error("not a rooted tree at `{element}`: {reason}")]
    NotATree { element: String, reason: String },

    #[error("poset has {size} elements, limit is {limit}")]
    SizeLimit { size: usize, limit: usize },

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("{0} and {1} are not comparable")]
    NotComparable(String, String),

    #[error("`{c}` is neither the parent nor a sibling of `{b}`")]
    Relation { c: String, b: String },

    #[error("`{0}` is maximal and has no matrix")]
    Leaf(String),

    #[error("index out of range: {0}")]
    Index(String),

    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },

    #[error("remaining submatrix is {rows}x{cols}, expected square")]
    Shape { rows: usize, cols: usize },

    #[error("term outside the domain of the linear operator: {0}")]
    Domain(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
