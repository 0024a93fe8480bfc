//! Command-line harness for the `sidonlab-core` library: set construction,
//! uniformity sweeps, discrepancy probes, colouring experiments and a
//! self-check battery.

pub mod cli;
pub mod config;
pub mod equidist;
pub mod error;
pub mod selfcheck;
pub mod sweep;

pub use error::{HarnessError, Result};
