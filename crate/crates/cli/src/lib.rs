//! Benchmark harness and instance reports behind the `ammd` binary.

pub mod bench;
pub mod report;

use std::path::PathBuf;

pub use bench::{run_bench, BenchConfig, BenchReport, BenchRow, InstanceSpec, SyntheticSpec};
pub use report::SpaceSummary;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    ConfigFile {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("config: {0}")]
    ConfigJson(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] ammd_core::Error),
    #[error("csv output: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

/// Runs `$body` with `$i` bound to the typed instance inside an [`ammd_core::io::AnyInstance`].
#[macro_export]
macro_rules! on_instance {
    ($any:expr, $i:ident => $body:expr) => {
        match $any {
            ammd_core::io::AnyInstance::Int($i) => $body,
            ammd_core::io::AnyInstance::Real($i) => $body,
        }
    };
}
