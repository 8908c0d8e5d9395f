//! Universal word-series coefficients for high-order averaging of
//! quasiperiodically forced systems and for normal forms of perturbed
//! autonomous systems.

pub mod autonomous;
pub mod cli;
pub mod error;
pub mod oracle;
pub mod polyfield;
pub mod quasiperiodic;
pub mod words;

pub use error::{Error, Result};
