use std::path::PathBuf;

use crate::config::ConfigError;

#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("{0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Core(#[from] heightlab_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("unknown preset `{0}` (see --list-presets)")]
    UnknownPreset(String),
    #[error("thread pool: {0}")]
    Threads(#[from] rayon::ThreadPoolBuildError),
}

impl LabError {
    /// 2 for bad input, 3 when a size guard tripped.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Core(e) if e.is_resource_guard() => 3,
            _ => 2,
        }
    }
}
