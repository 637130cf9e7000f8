use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex count {n} exceeds the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },

    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),

    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),

    #[error("invalid swap sequence: {0}")]
    InvalidSwap(String),

    #[error("label {0} out of range for n = {1}")]
    LabelOutOfRange(usize, usize),

    #[error("link endpoints must differ (got {0} twice)")]
    SameEndpoints(usize),

    #[error("({0}, {1}) is not the unique purple edge")]
    NotUniquePurple(usize, usize),

    #[error("search budget exhausted after {nodes} nodes (inconclusive)")]
    BudgetExhausted { nodes: u64 },

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("invalid generator parameters: {0}")]
    Generator(String),

    #[error("enumeration limited to n <= {max}, got {n}")]
    EnumerationCap { n: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
