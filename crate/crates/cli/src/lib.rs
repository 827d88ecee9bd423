//! File formats and experiment drivers for the `qpt-sim` command-line tool.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod records;

pub use config::{ExperimentConfig, ScheduleKind};
