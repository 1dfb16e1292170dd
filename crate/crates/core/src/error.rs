use thiserror::Error;

/// Library-wide error type. Refusals (size caps) are distinct from malformed
/// input so callers can map them to different exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph capacity exceeded: {0} vertices (limit {1})")]
    TooManyVertices(usize, usize),

    #[error("vertex {0} out of range (graph has {1} vertices)")]
    VertexOutOfRange(u32, usize),

    #[error("self-loops are not allowed")]
    SelfLoop,

    #[error("edge {0}-{1} not in graph")]
    MissingEdge(u32, u32),

    #[error("line graph undefined for edgeless input")]
    EdgelessLineGraph,

    #[error("graph power requires radius >= 1")]
    ZeroPower,

    #[error("theorem applies to odd powers only (got r = {0})")]
    EvenPower(u32),

    #[error("invalid family spec: {0}")]
    FamilySpec(String),

    #[error("invalid branch decomposition: {0}")]
    BranchDecomposition(String),

    #[error("invalid tree decomposition: {0}")]
    TreeDecomposition(String),

    #[error("element {0} outside the ground set (size {1})")]
    ElementOutOfRange(u32, usize),

    #[error("ground set component of size {size} exceeds the solver cap {cap}; raise the cap to proceed")]
    CapExceeded { size: usize, cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant failed: {0}")]
    Internal(String),
}

impl Error {
    /// True for refusals caused by size caps rather than malformed input.
    pub fn is_refusal(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
