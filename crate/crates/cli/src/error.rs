use bruhat_core::Error as CoreError;
use thiserror::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Input(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Core(e) => match e {
                CoreError::Resource { .. } => EXIT_RESOURCE,
                CoreError::Parameter(_)
                | CoreError::Precondition(_)
                | CoreError::NotAPoset(_)
                | CoreError::NotBounded(_)
                | CoreError::Closure(_) => EXIT_USAGE,
                CoreError::ConsistencyViolation(_)
                | CoreError::Invariant(_)
                | CoreError::TheoremViolation(_)
                | CoreError::ConditionViolation(_) => EXIT_FAIL,
            },
        }
    }
}
