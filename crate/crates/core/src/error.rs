use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("edge {0}-{1} joins two vertices of part {2}")]
    IntraPartEdge(usize, usize, usize),

    #[error("vertex {0} out of range (universe has {1} vertices)")]
    VertexOutOfRange(usize, usize),

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("graphs have different part structures")]
    PartMismatch,

    #[error("density undefined for an empty vertex set")]
    EmptyDensity,

    #[error("{0} is not {1}-free")]
    NotFree(&'static str, String),

    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),

    #[error("malformed document: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
