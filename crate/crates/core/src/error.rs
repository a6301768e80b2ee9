use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("{field}: {reason}")]
    Validation { field: String, reason: String },

    #[error("unreachable observation: output {index} has zero probability")]
    UnreachableObservation { index: usize },

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("unknown constraint profile `{0}`")]
    UnknownProfile(String),

    #[error("unknown regime `{0}`")]
    UnknownRegime(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn validation(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
