use thiserror::Error;

use crate::model::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input document. `position` is either `line:column` for
    /// syntax errors or a JSON path such as `agents[1].arcs[0]`.
    #[error("parse error at {position}: {message}")]
    Parse { position: String, message: String },

    /// Well-formed document describing an invalid instance; `position` is a
    /// path such as `agents[1].arcs[0]`.
    #[error("invalid instance at {position}: {message}")]
    Instance { position: String, message: String },

    #[error("invalid allocation: {}", format_violations(.0))]
    Validation(Vec<Violation>),

    #[error("{0}")]
    Domain(String),

    /// A solver was invoked on an instance outside its graph class.
    #[error("{solver} cannot solve this instance: {reason}")]
    Precondition { solver: &'static str, reason: String },

    #[error("exhaustive search refused: {size} assignments exceed the limit of {limit}")]
    OracleTooLarge { size: u128, limit: u128 },

    #[error("junction enumeration refused: gamma = {gamma} exceeds the limit of {limit}")]
    GammaTooLarge { gamma: usize, limit: usize },
}

impl Error {
    pub(crate) fn parse(position: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            position: position.into(),
            message: message.into(),
        }
    }

    pub(crate) fn instance(position: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Instance {
            position: position.into(),
            message: message.into(),
        }
    }

    pub(crate) fn domain(message: impl Into<String>) -> Self {
        Error::Domain(message.into())
    }

    pub(crate) fn precondition(solver: &'static str, reason: impl Into<String>) -> Self {
        Error::Precondition {
            solver,
            reason: reason.into(),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::parse(format!("{}:{}", err.line(), err.column()), err.to_string())
    }
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
