use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Core(toric_trace::Error),
    #[error("formula and oracle disagree: formula {formula}, oracle {oracle}")]
    Mismatch { formula: String, oracle: String },
}

impl CliError {
    /// 1 for usage and input problems, 2 for degenerate input, 3 for a failed cross-check.
    pub fn exit_code(&self) -> i32 {
        use toric_trace::Error as E;
        match self {
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Io { .. } => 1,
            CliError::Core(E::Syntax { .. } | E::UnknownVariable(_) | E::Invalid(_) | E::DimensionMismatch(_)) => 1,
            CliError::Core(_) => 2,
            CliError::Mismatch { .. } => 3,
        }
    }
}

impl From<toric_trace::Error> for CliError {
    fn from(e: toric_trace::Error) -> Self {
        CliError::Core(e)
    }
}
