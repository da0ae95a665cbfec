use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid length {0}: expected a power of two")]
    InvalidLength(usize),
    #[error("degenerate signal: {0}")]
    DegenerateSignal(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("transform mismatch: expected {expected}, found {found}")]
    WrongTransform { expected: String, found: String },
    #[error("empty support after thresholding")]
    EmptySupport,
    #[error("norm violation: |norm - 1| = {0:e}")]
    NormViolation(f64),
    #[error("duplicate basis index {0}")]
    DuplicateIndex(u64),
    #[error("register of {0} qubits exceeds simulator capacity ({1})")]
    Capacity(usize, usize),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("gate {0} not supported by target format")]
    UnsupportedGate(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("file not found: {0}")]
    MissingFile(PathBuf),
    #[error("column {0} not found")]
    MissingColumn(String),
    #[error("non-numeric cell {value:?} at row {row}")]
    NonNumeric { row: usize, value: String },
    #[error("column {0} is empty")]
    EmptyColumn(String),
    #[error("empty dataset in {0}")]
    EmptyDataset(PathBuf),
    #[error("tolerance exceeded: trace distance {achieved:.6} >= epsilon {epsilon}")]
    ToleranceExceeded { achieved: f64, epsilon: f64 },
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn is_io(&self) -> bool {
        matches!(
            self,
            Error::Io(_) | Error::MissingFile(_) | Error::EmptyDataset(_)
        ) || matches!(self, Error::Csv(e) if e.is_io_error())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
