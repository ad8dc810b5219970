use ghz_chain::analytics::AnalyticsError;
use ghz_chain::ghz::GhzError;
use ghz_chain::model::ModelError;
use ghz_chain::propagator::PropagateError;
use ghz_chain::subspace::SubspaceError;
use std::path::Path;
use thiserror::Error;

/// Process-level error with a stable exit-code mapping:
/// 2 = validation, 3 = numerical failure, 4 = I/O.
#[derive(Debug, Error)]
pub enum AppError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numerical(String),
    #[error("{0}")]
    Io(String),
}

impl AppError {
    pub fn exit_code(&self) -> u8 {
        match self {
            AppError::Validation(_) => 2,
            AppError::Numerical(_) => 3,
            AppError::Io(_) => 4,
        }
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        AppError::Io(format!("{}: {err}", path.display()))
    }
}

impl From<ModelError> for AppError {
    fn from(e: ModelError) -> Self {
        AppError::Validation(e.to_string())
    }
}

impl From<SubspaceError> for AppError {
    fn from(e: SubspaceError) -> Self {
        AppError::Validation(e.to_string())
    }
}

impl From<AnalyticsError> for AppError {
    fn from(e: AnalyticsError) -> Self {
        AppError::Validation(e.to_string())
    }
}

impl From<PropagateError> for AppError {
    fn from(e: PropagateError) -> Self {
        AppError::Numerical(e.to_string())
    }
}

impl From<GhzError> for AppError {
    fn from(e: GhzError) -> Self {
        AppError::Numerical(e.to_string())
    }
}
