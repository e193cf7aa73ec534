use thiserror::Error;

/// Errors raised by the engine, the checkers and the text format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("composition error: {0}")]
    Composition(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("resource error: {what} needs {needed}, cap is {cap}")]
    Resource {
        what: String,
        needed: usize,
        cap: usize,
    },

    #[error("unsupported structure: {0}")]
    Unsupported(String),

    #[error("missing generator a^{{{target}}}_{{{source_set}}} (leaving out {index})")]
    MissingGenerator {
        source_set: String,
        target: String,
        index: usize,
    },

    #[error("cube does not commute at {0}")]
    NonCommuting(String),

    #[error("simplicial identity violated: {0}")]
    Identity(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn resource(what: impl Into<String>, needed: usize, cap: usize) -> Self {
        Error::Resource {
            what: what.into(),
            needed,
            cap,
        }
    }
}
