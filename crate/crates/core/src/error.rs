use thiserror::Error;

use crate::template::ConflictReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} does not exist")]
    UnknownVertex(u32),
    #[error("duplicate edge ({0},{1})")]
    DuplicateEdge(u32, u32),
    #[error("vertex {0} has no successor")]
    DeadEnd(u32),
    #[error("vertex {0} loses all successors in the restriction")]
    RestrictionDeadEnd(u32),
    #[error("vertex name {0:?} contains a quote or newline")]
    InvalidName(String),
    #[error("priority {priority} exceeds the declared bound {bound}")]
    PriorityOutOfRange { priority: u32, bound: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error(
        "goal set cannot be reached from vertex {0} (precondition of the reach template violated)"
    )]
    NotAttractable(u32),
    #[error("priority function covers {got} vertices but the graph has {expected}")]
    PriorityArity { expected: usize, got: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("template has conflicts at {} vertices", .0.vertices().len())]
    Conflict(ConflictReport),
    #[error("reachable Player-0 vertex {0} has no move")]
    MissingMove(u32),
    #[error("no available edge outside the unsafe and co-live sets at vertex {0}")]
    NoAvailableEdge(u32),
    #[error("objective covers {got} vertices but the graph has {expected}")]
    PriorityArity { expected: usize, got: usize },
    #[error("product exploration exceeded {0} states")]
    ProductTooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle limited to {limit} vertices, got {got}")]
    TooLarge { limit: usize, got: usize },
    #[error("oracle limited to {limit} opponent strategies, got {got}")]
    TooManyStrategies { limit: u128, got: u128 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}
