use thiserror::Error;
use wentropy_core::ErrorKind;

#[derive(Error, Debug)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] wentropy_core::Error),

    #[error("{0}")]
    Parse(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Validation => 2,
                ErrorKind::Dimension => 3,
                ErrorKind::ChannelUndefined => 4,
            },
            CliError::Parse(_) | CliError::Io { .. } => 5,
        }
    }

    pub fn category(&self) -> &'static str {
        match self.exit_code() {
            2 => "validation",
            3 => "dimension",
            4 => "channel",
            _ => "parse",
        }
    }

    /// `error[<category>]: <message>` on a single line.
    pub fn one_line(&self) -> String {
        let msg = self.to_string().replace(['\n', '\r'], " ");
        format!("error[{}]: {}", self.category(), msg)
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
