//! File formats, experiment drivers and reports for Marchenko–Pastur layer
//! splitting; the numerics live in `mpsplit-core`.

pub mod checkpoint;
pub mod config;
pub mod error;
pub mod idx;
pub mod matrix_io;
pub mod report;
pub mod runner;

pub use checkpoint::{load_checkpoint, save_checkpoint, CheckpointError, Manifest};
pub use config::{AnalyzeConfig, ExperimentConfig, Mode, Overrides, SweepConfig, SynthConfig, WeightsSource};
pub use error::{Error, ExitCode, Result};
pub use idx::{load_mnist, load_mnist_dir, IdxError};
pub use runner::{run_analyze, run_synth, run_training, run_truncation_sweep};
