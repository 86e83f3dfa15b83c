use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("group order must be positive")]
    EmptyGroup,
    #[error("no generators supplied")]
    NoGenerators,
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("closure exceeded the cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },
    #[error("element {element} out of range for a group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },
    #[error("vertex {vertex} out of range for a digraph on {nv} vertices")]
    VertexOutOfRange { vertex: usize, nv: usize },
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("brute force is limited to {max} vertices, got {nv}")]
    TooManyVertices { nv: usize, max: usize },
    #[error("digraph is not weakly connected")]
    Disconnected,
    #[error("representatives must contain exactly one vertex of each block")]
    RepresentativesNotBlockSpanning,
    #[error("generator spec does not generate the group")]
    SpecDoesNotGenerate,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("search budget exceeded: estimated {estimate} row combinations, budget {budget}")]
    BudgetExceeded { estimate: u128, budget: u128 },
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
