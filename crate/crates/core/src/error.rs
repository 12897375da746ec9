use thiserror::Error;

/// Errors produced by the stabilizer toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("qubit index {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },

    #[error("row index {row} out of range for {n} rows")]
    RowOutOfRange { row: usize, n: usize },

    #[error("two-qubit gate needs distinct qubits, got {0} twice")]
    RepeatedQubit(usize),

    #[error("row {0} multiplied by itself")]
    SelfMultiply(usize),

    #[error("invalid stabilizer matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("the Pauli operator maps the state onto itself up to phase; no superposition exists")]
    NotSuperposition,

    #[error("{n} qubits is too many for this operation (limit {max})")]
    TooLarge { n: usize, max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
