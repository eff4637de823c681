use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed image or record input. `offset` is the byte offset (or the
    /// 1-based line number for line-oriented record files) where parsing failed.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("empty skeleton")]
    EmptySkeleton,

    #[error("zero-extent image")]
    ZeroExtent,

    #[error("cannot classify an empty direction vector")]
    EmptyDirectionVector,

    #[error("empty training set")]
    EmptyTrainingSet,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    /// True for errors caused by malformed input rather than by the content of a
    /// well-formed input.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}
