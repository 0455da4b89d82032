use specnorm::EngineError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("unknown reproduce target `{0}` (expected table1, tables2to4 or appendixA)")]
    UnknownTarget(String),
    #[error("{0}")]
    Inconsistency(String),
    #[error("{0}")]
    Engine(String),
    #[error("{0} value(s) outside tolerance")]
    Deviation(usize),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::UnknownTarget(_) => 2,
            CliError::Inconsistency(_) => 3,
            CliError::Engine(_) | CliError::Deviation(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::InternalInconsistency { .. } => CliError::Inconsistency(e.to_string()),
            EngineError::State(_) | EngineError::NotReal => CliError::Input(e.to_string()),
            other => CliError::Engine(other.to_string()),
        }
    }
}
