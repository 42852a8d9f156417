use std::path::PathBuf;

/// Failures surfaced by the std layer, each mapped to a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("data error: {0}")]
    Data(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type AppResult<T> = Result<T, AppError>;

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Config(_) => 2,
            AppError::Data(_) | AppError::Io { .. } => 3,
            AppError::Numerical(_) => 4,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        AppError::Io { path: path.into(), source }
    }
}

impl From<anova_core::Error> for AppError {
    fn from(e: anova_core::Error) -> Self {
        use anova_core::Error as E;
        match e {
            E::NonFinite(_) | E::DegenerateModel | E::UndefinedReference => AppError::Numerical(e.to_string()),
            E::Domain { .. } | E::EmptyData | E::LengthMismatch { .. } | E::DimensionMismatch { .. } => {
                AppError::Data(e.to_string())
            }
            _ => AppError::Config(e.to_string()),
        }
    }
}
