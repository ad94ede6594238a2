use thiserror::Error;

/// Errors produced by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop at vertex {0} is not allowed")]
    Loop(usize),

    #[error("pair ({u}, {v}) listed twice with different multiplicities {first} and {second}")]
    AsymmetricDuplicate {
        u: usize,
        v: usize,
        first: u32,
        second: u32,
    },

    #[error("edge ({u}, {v}) has multiplicity 0")]
    ZeroMultiplicity { u: usize, v: usize },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("vertex set must be nonempty")]
    EmptySet,

    #[error("vertex {0} appears more than once in a vertex set")]
    DuplicateVertex(usize),

    #[error("vertex sets overlap at vertex {0}")]
    Overlap(usize),

    #[error("vertex {0} is not a member of the set")]
    NotInSet(usize),

    #[error("divisor has {got} entries, graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("labels do not form a bipartition: edge ({0}, {1}) joins one side")]
    BadBipartition(usize, usize),

    #[error("graph has parallel edges; a simple graph is required")]
    NotSimple,

    #[error("preconditions fail: need min valence >= {r} and girth > {}", r + 1)]
    PreconditionsViolated { r: u32 },

    #[error("no multiplicity-free divisor of degree <= {n} has rank >= {r}")]
    MfInfeasible { n: usize, r: u32 },

    #[error("independence search supports at most {max} vertices, graph has {n}")]
    TooManyVertices { n: usize, max: usize },

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
