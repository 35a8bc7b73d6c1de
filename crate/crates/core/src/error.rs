use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("vertex set is empty")]
    EmptyVertexSet,

    #[error("vertex sets are joined by {0} crossing edge(s)")]
    CrossingEdges(usize),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("polynomial has no real root")]
    NoRealRoot,

    #[error("brute-force oracle refuses n = {n} (limit {limit})")]
    TooLarge { n: usize, limit: usize },

    #[error("brute-force oracle refuses m = {m} (limit {limit})")]
    TooManyEdges { m: usize, limit: usize },

    #[error("construction error: {0}")]
    Construction(String),

    #[error("random generation gave up after {0} restarts")]
    RetriesExhausted(usize),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
