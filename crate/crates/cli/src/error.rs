use std::path::PathBuf;

use coherence_core::CoherenceError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {}", .0.join("; "))]
    Validation(Vec<String>),
    #[error("{scenario} scenario failed: {source}")]
    Model {
        scenario: &'static str,
        #[source]
        source: CoherenceError,
    },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// Process exit status: 2 for invalid input, 3 for numerical failures,
    /// 1 for I/O problems.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Model { source, .. } if source.is_numerical() => 3,
            CliError::Model { .. } => 2,
            CliError::Io { .. } => 1,
        }
    }

    pub(crate) fn model(scenario: &'static str) -> impl FnOnce(CoherenceError) -> CliError {
        move |source| CliError::Model { scenario, source }
    }
}
