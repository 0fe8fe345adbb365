use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("size guard exceeded for {what}: {size} > {limit} (set GDK_GUARD_OVERRIDE to raise)")]
    Guard {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("element {0} is not a unit")]
    NotUnit(usize),
    #[error("missing coproduct data: {0}")]
    MissingCoproduct(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}
