use thiserror::Error;

/// Error categories shared by every module. The CLI maps them to exit codes.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("resource error: {0}")]
    Resource(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("lamp group mismatch: {0}")]
    LampMismatch(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Short machine-readable tag used on stderr.
    pub fn tag(&self) -> &'static str {
        match self {
            Error::Config(_) | Error::Parse { .. } => "config",
            Error::Resource(_) => "resource",
            Error::Domain(_) => "domain",
            Error::Unsupported(_) => "unsupported",
            Error::LampMismatch(_) => "type",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
