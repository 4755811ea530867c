use thiserror::Error;

/// Every failure the library can report.
///
/// Variants fall into three groups the command line maps onto exit codes:
/// malformed input (`Parse`, the graph construction errors), violated
/// preconditions of an operation, and internal failures that indicate a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid name `{0}`: names are nonempty tokens of letters, digits and underscores")]
    InvalidName(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge `{0}`")]
    DuplicateEdge(String),
    #[error("edge endpoint `{0}` is not a declared vertex")]
    DanglingEndpoint(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("the graph has no vertices")]
    EmptyGraph,
    #[error("edge sequence is not a cycle of this graph: {0}")]
    NotACycle(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vertex `{0}` is a sink and has no relation")]
    NotRegular(String),
    #[error("vertex `{0}` has coefficient 0, the relation cannot be applied")]
    InsufficientCoefficient(String),
    #[error("vertex `{0}` is not a source")]
    NotASource(String),
    #[error("eliminating `{0}` would leave a graph without vertices")]
    WouldEmptyGraph(String),
    #[error("count must be at least 1, got {0}")]
    BadCount(u64),
    #[error("vertex set is not hereditary: `{from}` reaches `{to}` outside the set")]
    NotHereditary { from: String, to: String },
    #[error("the graph outside the hereditary set contains a cycle through `{0}`")]
    ComplementHasCycle(String),
    #[error("the graph has Invariant Basis Number, no witness exists")]
    NotApplicable,
    #[error("malformed witness: {0}")]
    MalformedWitness(String),

    #[error("witness construction failed: {0}")]
    WitnessConstructionFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
