use alloc::string::String;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("malformed graph6 string: {0}")]
    MalformedGraph6(String),
    #[error("unsupported size: {0}")]
    UnsupportedSize(String),
    #[error("infeasible generator parameters: {0}")]
    InfeasibleSpec(String),
    #[error("random generation gave up after {0} attempts")]
    GenerationTimeout(usize),
    #[error("size cap exceeded: {what} is {actual}, limit {limit}")]
    SizeCapExceeded {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("edge ordering is not a permutation of the edge ids")]
    InvalidOrdering,
    #[error("too many edges for exhaustive enumeration: {0} (limit {1})")]
    TooManyEdges(usize, usize),
    #[error("memo table exceeded its budget of {0} entries")]
    MemoryBudgetExceeded(usize),
    #[error("graph is not connected")]
    DisconnectedInput,
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
