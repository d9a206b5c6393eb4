use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {0} is out of range")]
    InvalidVertex(usize),
    #[error("{0} is not a tube")]
    NotATube(String),
    #[error("invalid tubing: {0}")]
    InvalidTubing(String),
    #[error("invalid G-forest: {0}")]
    InvalidForest(String),
    #[error("tube {0} is not in the tubing")]
    TubeNotInTubing(String),
    #[error("tube {0} is the vertex set of a component and cannot be flipped")]
    MaximalTubeNotFlippable(String),
    #[error("{0} is not an ideal of the tubing")]
    NotAnIdeal(String),
    #[error("element not found in poset")]
    ElementNotFound,
    #[error("elements are not comparable")]
    NotComparable,
    #[error("poset is not a lattice")]
    NotALattice,
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("graph is not right-filled")]
    NotRightFilled,
    #[error("graph is not filled (degree {0})")]
    NotFilled(usize),
    #[error("{0} does not cover {1} in the weak order")]
    NotACover(String, String),
    #[error("invalid arc: {0}")]
    InvalidArc(String),
    #[error("family is not admissible at degrees ({n}, {m}): {detail}")]
    NotAdmissibleAtDegree { n: usize, m: usize, detail: String },
    #[error("family is not restriction-compatible: {0}")]
    NotRestrictionCompatible(String),
    #[error("first graph is not a subgraph of the second")]
    NotASubgraph,
    #[error("order relation has a cycle")]
    Cyclic,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
