use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("malformed permutation: {0}")]
    MalformedPerm(String),
    #[error("element {0} is not in the ambient group")]
    NotInAmbient(String),
    #[error("group of order {order} is too large: element cap is {cap}")]
    TooLarge { order: u64, cap: usize },
    #[error("group order overflows u64")]
    OrderOverflow,
    #[error("subgroup is not normal in the ambient group")]
    NotNormal,
    #[error("quotient index {index} exceeds degree cap {cap}")]
    IndexCapExceeded { index: u64, cap: usize },
    #[error("not a {0}-group")]
    NotPGroup(u64),
    #[error("p-group of order {order} exceeds the quaternion-free cap {cap}")]
    QuaternionCapExceeded { order: u64, cap: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("trivial group has no minimal normal subgroups")]
    TrivialGroup,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn in_file(self, path: impl Into<PathBuf>) -> Error {
        Error::File {
            path: path.into(),
            source: Box::new(self),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
