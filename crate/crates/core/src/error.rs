use thiserror::Error;

/// Errors raised while loading inputs or running the algorithms.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid hierarchy at vertex `{vertex}`: {message}")]
    Hierarchy { vertex: String, message: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("{0}")]
    Domain(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("degenerate degree distribution: {0}")]
    DegenerateFit(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn hierarchy(vertex: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Hierarchy {
            vertex: vertex.into(),
            message: message.into(),
        }
    }

    /// True for failures of the linear algebra, an iterative method or a
    /// fit, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Numerical(_) | Error::DegenerateFit(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
