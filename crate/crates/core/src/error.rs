use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("size cap exceeded: projected {estimate} elements, cap {cap}")]
    SizeCap { estimate: u128, cap: usize },
    #[error("radius exhausted: distance exceeds enumerated radius {radius}")]
    RadiusExhausted { radius: usize },
    #[error("not even: vertex {vertex} has odd degree {degree}")]
    NotEven { vertex: usize, degree: usize },
    #[error("not connected")]
    NotConnected,
    #[error("graph has no edges")]
    NoEdges,
    #[error("empty graph")]
    EmptyGraph,
    #[error("edge set does not separate the marked sides")]
    NotSeparating,
    #[error("Hall condition violated by block set {blocks:?} (neighbourhood size {neighbours})")]
    HallViolation { blocks: Vec<usize>, neighbours: usize },
    #[error("window exhausted: index {index} outside 0..{len}")]
    WindowExhausted { index: i64, len: usize },
    #[error("not a bijection: {0}")]
    NotBijective(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degree window violated: {0}")]
    DegreeWindow(String),
    #[error("insufficient depth: truncation reached at {0}")]
    InsufficientDepth(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("rejected: {0}")]
    Rejected(String),
    #[error("no tiling on this window (window artifact, not a statement about the group)")]
    NoTiling,
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
