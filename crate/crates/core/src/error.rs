use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph has {k} vertices; exact enumeration supports at most {max}")]
    TooLarge { k: usize, max: usize },

    #[error("vertex {0} has an empty in-neighborhood and cannot be dominated")]
    Undominatable(usize),

    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),

    #[error("parameter `{name}` = {value} is outside [0, 1]")]
    ParameterRange { name: String, value: f64 },

    #[error("missing parameter `{0}`")]
    MissingParameter(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("instance is not observable: vertex {0} has no in-edges")]
    NotObservable(usize),

    #[error("the best vertex is not unique")]
    AmbiguousBest,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("best vertex is unidentifiable: {0}")]
    Unidentifiable(String),

    #[error("bound undefined: {0}")]
    BoundUndefined(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
