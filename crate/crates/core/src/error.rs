use crate::dag::VertexId;
use num_bigint::BigUint;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph with {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0} -> {1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("graph contains a directed cycle")]
    Cycle,
    #[error("edge {0} -> {1} has weight zero; weights must be positive")]
    ZeroWeight(VertexId, VertexId),
    #[error("graph must have at least one vertex")]
    Empty,

    #[error("sink {t} is not reachable from source {s}")]
    NoPath { s: VertexId, t: VertexId },
    #[error("vertex {0} cannot reach the sink")]
    UnreachableVertex(VertexId),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration cap of {cap} exceeded")]
    CapExceeded { cap: usize },

    #[error("grid scale n={n} too small: n^2 must be at least {needed}")]
    ScaleTooSmall { n: u64, needed: usize },
    #[error("grid edge {0} -> {1} does not join orthogonal lattice neighbours")]
    NotLatticeEdge(VertexId, VertexId),
    #[error("grid vertex {vertex}: {message}")]
    BadCoordinate { vertex: VertexId, message: String },

    #[error("Test(k={k}, v={v}) has {runs} deciding runs")]
    AmbiguousTest {
        k: usize,
        v: VertexId,
        runs: BigUint,
    },
    #[error("Test(k={k}, v={v}) has no deciding run")]
    NoDecidingRun { k: usize, v: VertexId },
    #[error("Test(k={k}, v={v}) has deciding runs with both verdicts")]
    InconsistentVerdicts { k: usize, v: VertexId },
    #[error("no guess of M leads to an accepting run")]
    NoAcceptingRun,
    #[error("counter underflow at stage {k}")]
    CounterUnderflow { k: usize },
    #[error("simulation reported {simulated} but the dynamic program gives {expected}")]
    Disagreement { simulated: usize, expected: usize },

    #[error("subdivision needs {needed} vertices, budget is {budget}")]
    BudgetExceeded { needed: BigUint, budget: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid graph: {0}")]
    Invariant(String),

    #[error("gave up after {0} attempts")]
    RetriesExhausted(usize),
}
