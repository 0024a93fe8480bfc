//! Sidon sets on integer intervals: constructions, verification, Fourier
//! uniformity measurements, equidistribution probes and exact counting of
//! solutions to linear equations over coloured sets.
//!
//! Everything here is pure and immutable after construction, so the types
//! can be shared freely across the worker threads of a sweep.

pub mod constructions;
pub mod equations;
pub mod equidistribution;
mod error;
pub mod fourier;
pub mod io;
pub mod primes;
pub mod set;

pub use error::{Error, Result};
pub use set::{IntegerSet, SidonCertificate};
