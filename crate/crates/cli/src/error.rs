use std::fmt;
use std::path::Path;

/// A failure with its exit status: 1 for usage and configuration problems,
/// 2 for bad or unusable data.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }

    /// Wraps a library error raised while handling `path`.
    pub fn in_file(path: &Path, err: feature_tags::Error) -> Self {
        let message = format!("{}: {err}", path.display());
        match err {
            feature_tags::Error::Config(_) => CliError::Usage(message),
            _ => CliError::Data(message),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Data(m) => f.write_str(m),
        }
    }
}

impl From<feature_tags::Error> for CliError {
    fn from(err: feature_tags::Error) -> Self {
        match err {
            feature_tags::Error::Config(_) => CliError::Usage(err.to_string()),
            _ => CliError::Data(err.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
