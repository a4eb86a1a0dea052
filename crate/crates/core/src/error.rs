use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("not a unit: {0}")]
    NonUnit(String),
    #[error("bad argument: {0}")]
    BadArgument(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("geometry error: {0}")]
    Geometry(String),
    #[error("base point lies on a wall: {0}")]
    BasePoint(String),
    #[error("non-Hamiltonian deviation: {0}")]
    NonHamiltonian(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("invalid decomposition ({axiom}): {msg}")]
    Validation { axiom: String, msg: String },
    #[error("bad chain: {0}")]
    BadChain(String),
    #[error("convexity error: {0}")]
    Convexity(String),
    #[error("malformed curve: {0}")]
    MalformedCurve(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }
}
