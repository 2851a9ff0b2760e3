use crate::json::ParseError;
use crate::schema::SchemaError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Syntax(#[from] ParseError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("the document collection is empty")]
    EmptyCollection,
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error("csv export failed: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for failures caused by the input data rather than the
    /// configuration.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Config(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
