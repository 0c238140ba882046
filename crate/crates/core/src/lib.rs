//! Sharp Bohr–Rogosinski radii for concave univalent function families.
//!
//! The crate is organised bottom-up:
//!
//! * [`series`] — truncated power series over `Complex64` and structured
//!   Schwarz functions (damped finite Blaschke products times `z^m`).
//! * [`families`] — the extremal maps of the opening-angle family
//!   (`f_α`) and of the pole family (`k_p`), their Taylor coefficients,
//!   tails, distortion factor and boundary distances.
//! * [`radius`] — the radius functions `F`, `K`, `G`, a certified bisection
//!   root finder and closed-form specialisations.
//! * [`verify`] — a sampling harness that checks the subordination
//!   inequalities on random Schwarz functions and confirms sharpness.
//! * [`acceptance`] — the exit-criteria battery shared by the test suite
//!   and the `selftest` CLI command.
//!
//! Sampling work runs on rayon when the `parallel` feature (default) is on
//! and falls back to a plain sequential loop otherwise.

// `!(x < y)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
mod error;
pub mod families;
mod order;
pub mod par;
pub mod radius;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use families::ConcaveFamily;
pub use order::Order;
pub use radius::{find_radius, RadiusProblem, RadiusResult, VanishingOrderSpec, Variant};
pub use series::{SchwarzFunction, TruncatedSeries};

/// Default truncation order for series work.
pub const DEFAULT_ORDER: usize = 256;
