use thiserror::Error;

/// Coarse classification used for process exit codes and FFI status codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Consistency,
    Resource,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Input => 2,
            ErrorKind::Consistency => 3,
            ErrorKind::Resource => 4,
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Dynkin type: {0}")]
    InvalidType(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("[{code}] {message}")]
    Spec { code: &'static str, message: String },

    #[error("knitting did not terminate within {cap} steps; last columns: {trace}")]
    Nontermination { cap: usize, trace: String },

    #[error("nu_beta left the nonnegative cone: slot {slot} would become {value}")]
    Domain { slot: usize, value: i64 },

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("resource cap exceeded: {0}")]
    Resource(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidType(_) | Error::Argument(_) | Error::Spec { .. } | Error::Domain { .. } => {
                ErrorKind::Input
            }
            Error::Json(_) | Error::Io { .. } => ErrorKind::Input,
            Error::Nontermination { .. } | Error::Consistency(_) => ErrorKind::Consistency,
            Error::Resource(_) => ErrorKind::Resource,
        }
    }

    pub(crate) fn spec(code: &'static str, message: impl Into<String>) -> Self {
        Error::Spec {
            code,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
