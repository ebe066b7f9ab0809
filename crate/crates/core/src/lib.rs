//! Enumeration, capacity analysis and block codes for DNA strands that
//! obey a maximum homopolymer run and an AT/GC balance constraint.
//!
//! Nucleotides are identified with the symbols `G = 0`, `C = 1`, `A = 2`
//! and `T = 3`, so the AT-content of a strand is the weight of its most
//! significant bit plane.
//!
//! * [`counting`] holds the exact (big integer) enumerators.
//! * [`asymptotics`] holds capacities, leading coefficients, Gaussian
//!   weight approximations and redundancy figures.
//! * [`codecs`] holds the encoders and decoders.
//! * [`oracle`] is an independent brute-force checker.
//! * [`tables`] renders the result tables and the redundancy curve as CSV.

pub mod asymptotics;
pub mod codecs;
pub mod counting;
mod error;
pub mod oracle;
pub mod tables;

pub use error::{Error, Result};

/// Sentinel maximum run length meaning "no runlength constraint".
pub const UNBOUNDED: usize = usize::MAX;
