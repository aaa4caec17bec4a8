use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The input claims to be consistent but a packet check disagrees.
    #[error("consistency violation: {0}")]
    ConsistencyViolation(String),

    /// An operation produced a value that breaks one of its own postconditions.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    /// A constructive witness required by the sphericity argument could not be built.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("resource limit: {what} is {count}, limit is {limit}")]
    Resource {
        what: &'static str,
        count: u64,
        limit: u64,
    },

    #[error("not a poset: {0}")]
    NotAPoset(String),

    #[error("not bounded: {0}")]
    NotBounded(String),

    #[error("complex is not closed: {0}")]
    Closure(String),

    #[error("condition violation: {0}")]
    ConditionViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
