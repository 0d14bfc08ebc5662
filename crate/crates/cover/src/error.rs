use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("ball centers {0} and {1} coincide")]
    DuplicateCenters(usize, usize),
    #[error("unknown instance name `{0}`")]
    UnknownInstance(String),
    #[error("no multistart trial converged")]
    NoConvergedTrial,
    #[error("{0}")]
    Domain(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
