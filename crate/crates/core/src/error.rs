use thiserror::Error;

/// Errors raised while building or querying a [`crate::graph::Graph`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} listed twice")]
    DuplicateVertex(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Which half of the friendly-swap rule a rejected move broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Adjacency {
    /// The two positions are not adjacent in Y.
    Positions,
    /// The two occupants are not adjacent in X.
    Persons,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("illegal move ({a}, {b}): {} not adjacent", match .failed {
        Adjacency::Positions => "positions",
        Adjacency::Persons => "persons",
    })]
    IllegalMove { a: usize, b: usize, failed: Adjacency },
    #[error("move {index} is illegal: {source}")]
    IllegalMoveAt { index: usize, source: Box<Error> },
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported instance: {0}")]
    UnsupportedInstance(String),
    #[error("degree condition violated: {0}")]
    DegreeConditionViolated(String),
    #[error("state budget of {budget} exceeded")]
    StateBudgetExceeded { budget: u64 },
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
