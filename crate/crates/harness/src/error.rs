use sidonlab_core::Error as CoreError;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, HarnessError>;

/// Exit code for success.
pub const EXIT_OK: i32 = 0;
/// Exit code when an invariant, check or row fails.
pub const EXIT_FAILURE: i32 = 1;
/// Exit code for bad flags or parameters.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Failure(String),

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Usage(_) => EXIT_USAGE,
            HarnessError::Failure(_) | HarnessError::Io(_) => EXIT_FAILURE,
            HarnessError::Core(e) => match e {
                CoreError::InvalidSet(_)
                | CoreError::NotPrime(_)
                | CoreError::CapExceeded { .. }
                | CoreError::OutOfRange(_)
                | CoreError::GridTooSmall { .. }
                | CoreError::Empty(_)
                | CoreError::InvalidEquation(_)
                | CoreError::InvalidFunction(_)
                | CoreError::Parse(_) => EXIT_USAGE,
                _ => EXIT_FAILURE,
            },
        }
    }
}
