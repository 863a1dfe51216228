use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ErrorKind {
    ParseError,
    ValidationError,
    VerificationFailed,
}

/// A failure reported as `{"error": {...}}` on stderr.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[error("{kind:?} at {path}: {message}")]
pub struct CliError {
    pub kind: ErrorKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<String>,
    pub path: String,
    pub message: String,
}

impl CliError {
    pub fn new(kind: ErrorKind, path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError {
            kind,
            file: None,
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self::new(ErrorKind::ParseError, path, message)
    }

    pub fn validation(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self::new(ErrorKind::ValidationError, path, message)
    }

    pub fn verification(message: impl Into<String>) -> Self {
        Self::new(ErrorKind::VerificationFailed, "", message)
    }

    /// A rejection by the core library, located at `path` in the input.
    pub fn library(path: impl Into<String>, e: polychi_core::Error) -> Self {
        Self::validation(path, e.to_string())
    }

    pub fn in_file(mut self, file: &str) -> Self {
        self.file.get_or_insert_with(|| file.to_string());
        self
    }

    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::ParseError | ErrorKind::ValidationError => 2,
            ErrorKind::VerificationFailed => 3,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": self }).to_string()
    }
}
