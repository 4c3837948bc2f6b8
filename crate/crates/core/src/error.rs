use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("the zero vector has no direction")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the inequality description is infeasible")]
    EmptyPolyhedron,
    #[error("polyhedron is not a face of the given cell")]
    NotAFace,
    #[error("expected a face of codimension one, found codimension {0}")]
    WrongCodimension(usize),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("matroid has a loop at element {0}")]
    HasLoops(usize),
    #[error("cannot contract loop {0}")]
    LoopContraction(usize),
    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),
    #[error("need at least two facets, found {0}")]
    TooFewFacets(usize),
    #[error("search budget of {budget} subset checks exceeded ({required} required)")]
    BudgetExceeded { budget: u64, required: u128 },
    #[error("face does not belong to any cell of the complex")]
    NotInComplex,
    #[error("declared lineality space is not contained in the lineality of every cell")]
    DeclarationMismatch,
    #[error("skeleton dimension {k} is below the lineality dimension {lineality}")]
    LinealityObstruction { k: usize, lineality: usize },
    #[error("hyperplane is not transverse: {0}")]
    NotTransverse(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("unknown generator kind {0:?}")]
    UnknownKind(String),
    #[error("parse error: {0}")]
    Parse(String),
}
