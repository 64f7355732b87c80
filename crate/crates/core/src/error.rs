use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph has {n} vertices, limit is {max}")]
    TooLarge { n: usize, max: usize },

    #[error("malformed graph6: {0}")]
    Graph6(String),

    #[error("graph is not bipartite (odd cycle through vertices {odd_cycle:?})")]
    NotBipartite { odd_cycle: Vec<usize> },

    #[error("pattern graph must be connected")]
    NotConnected,

    /// A supplied graph contains a member of the family it had to avoid.
    #[error("graph contains forbidden member {member}")]
    ForbiddenMember { member: String },

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
