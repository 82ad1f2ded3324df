//! File formats, experiment harness and command-line tooling on top of
//! `polreuse-core`.

pub mod config;
pub mod error;
pub mod experiment;
pub mod export;
pub mod formats;
pub mod library;
pub mod manifest;
pub mod suites;

pub use config::{Algorithm, ExperimentConfig, TrainingParams};
pub use error::{LabError, LabResult};
pub use experiment::{run_experiment, ResultSet};
pub use manifest::Manifest;
