//! Experiment harness for `heightlab-core`: configuration files, named
//! presets, a thread-pool executor, CSV artifacts and the invariant suite.

pub mod config;
mod error;
pub mod exec;
pub mod presets;
pub mod report;
mod run;
pub mod verify;

pub use config::{ConfigError, ExperimentConfig, Job, Mode};
pub use error::LabError;
pub use exec::RayonExecutor;
pub use run::{run, Outcome, Status};
