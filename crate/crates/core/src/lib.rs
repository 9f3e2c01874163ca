//! Entanglement of two-mode Gaussian states from single-mode measurements.
//!
//! A two-mode state enters a phase shifter and a beam splitter; only the
//! photon number and the purity of one output mode are recorded. From a
//! handful of such observations the four local symplectic invariants are
//! reconstructed, which in turn fix the separability verdict, the
//! entanglement of formation (symmetric states) and the logarithmic
//! negativity.
//!
//! The crate is organised as:
//!
//! * [`gaussian`]: covariance matrices in quadrature and mode-operator form,
//!   invariants, the local standard form and state generators.
//! * [`entanglement`]: separability and entanglement measures computed from an
//!   [`InvariantSet`](gaussian::InvariantSet).
//! * [`bench`]: the virtual optical bench (Bogoliubov transformation,
//!   detector models, loss correction, homodyne sampling).
//! * [`schemes`]: the measurement protocols, selected by name through a
//!   [`SchemeRegistry`](schemes::SchemeRegistry).
//! * [`report`]: run reports, sweeps and transcript replay.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bench;
pub mod entanglement;
mod error;
pub mod gaussian;
pub mod report;
pub mod schemes;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = nalgebra::Complex<f64>;
