//! Experiment runner for `torus-chaos`: partition generators, parameter
//! sweeps and their CSV / PGM outputs.

pub mod config;
pub mod error;
pub mod output;
pub mod partitions;
pub mod runner;

pub use config::{ExperimentConfig, Settings, Task};
pub use error::{CliError, Result};
pub use partitions::{gen_partition, PartitionSpec};
