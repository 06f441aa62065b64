use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] jackht::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 for resource caps and uncertified truncations, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(e) if e.is_resource() => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Lib(jackht::Error::Invalid(_)) => "invalid",
            CliError::Lib(jackht::Error::Cap(_)) => "cap",
            CliError::Lib(jackht::Error::Divergent(_)) => "divergent",
            CliError::Lib(jackht::Error::Defect { .. }) => "defect",
            CliError::Io(_) => "io",
            CliError::Json(_) => "parse",
            CliError::Csv(_) => "io",
        }
    }
}

pub fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

#[derive(Serialize)]
pub struct ErrorBody<'a> {
    pub kind: &'a str,
    pub message: String,
    pub exit_code: i32,
}

#[derive(Serialize)]
pub struct ErrorReport<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub error: ErrorBody<'a>,
}
