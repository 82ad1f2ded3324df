use std::path::{Path, PathBuf};

/// Errors raised by the harness. Anything tied to a file carries its path.
#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}:{line}:{column}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{}: {source}", path.display())]
    Core {
        path: PathBuf,
        source: polreuse_core::Error,
    },
    #[error(transparent)]
    Model(#[from] polreuse_core::Error),
    #[error("training stalled on task `{task}` after {episodes} episodes (last evaluation {last_eval})")]
    TrainingStalled {
        task: String,
        episodes: usize,
        last_eval: f64,
    },
    #[error("{0}")]
    Validation(String),
}

pub type LabResult<T> = Result<T, LabError>;

impl LabError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        LabError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn parse(path: &Path, line: usize, column: usize, message: impl Into<String>) -> Self {
        LabError::Parse {
            path: path.to_path_buf(),
            line,
            column,
            message: message.into(),
        }
    }

    /// Attach a file to a core error, turning core parse positions into file positions.
    pub fn in_file(path: &Path, err: polreuse_core::Error) -> Self {
        match err {
            polreuse_core::Error::Parse {
                line,
                column,
                message,
            } => LabError::parse(path, line, column, message),
            other => LabError::Core {
                path: path.to_path_buf(),
                source: other,
            },
        }
    }
}

pub(crate) fn read_text(path: &Path) -> LabResult<String> {
    std::fs::read_to_string(path).map_err(|e| LabError::io(path, e))
}

pub(crate) fn write_text(path: &Path, text: &str) -> LabResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| LabError::io(dir, e))?;
    }
    std::fs::write(path, text).map_err(|e| LabError::io(path, e))
}

/// 1-based line and column of a byte offset.
pub(crate) fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}
