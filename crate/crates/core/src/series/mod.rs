//! Truncated power-series arithmetic and Schwarz-function construction.
//!
//! Subordinates `g = f∘w` are built here by composing the Taylor series of an
//! extremal map with that of a structured Schwarz function.

mod dd;
mod schwarz;
mod truncated;

pub use schwarz::{schwarz_sample, SchwarzFunction};
pub use truncated::TruncatedSeries;

pub use num_complex::Complex64;
