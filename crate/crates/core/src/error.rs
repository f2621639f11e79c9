use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("attempted to invert zero")]
    DivisionByZero,

    #[error("operands belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),

    #[error("vertex {vertex} is outside 1..={m}")]
    VertexOutOfRange { vertex: usize, m: usize },

    #[error("facet {facet:?} repeats vertex {vertex}")]
    DuplicateVertex { facet: Vec<usize>, vertex: usize },

    #[error("{what} supports at most {max} vertices, got {m}")]
    TooManyVertices { what: &'static str, m: usize, max: usize },

    #[error("{0:?} is not a simplex of the complex")]
    NotASimplex(Vec<usize>),

    #[error("vertex set {sub:?} is not contained in {sup:?}")]
    NotASubset { sub: Vec<usize>, sup: Vec<usize> },

    #[error("cochain is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("representative is not a cocycle: {0}")]
    NotACocycle(String),

    #[error("graph sizes differ: {0} vs {1}")]
    GraphSizeMismatch(usize, usize),

    #[error("expected a complex on {expected} vertices, got {found}")]
    WrongVertexCount { expected: usize, found: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
