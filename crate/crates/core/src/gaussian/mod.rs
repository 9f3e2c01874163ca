//! Covariance-matrix representations of zero-mean two-mode Gaussian states.
//!
//! Two equivalent descriptions are supported:
//!
//! * [`QuadCovariance`]: the real 4x4 matrix of symmetrised quadrature
//!   moments in the order `(X1, P1, X2, P2)`, normalised so the vacuum is the
//!   identity.
//! * [`ModeCovariance`]: the Hermitian 4x4 matrix of the mode operators
//!   `(a1, a1†, a2, a2†)`, parametrised by `n1, n2, m1, m2, ms, mc`.
//!
//! The four local symplectic invariants live in [`InvariantSet`], stored in
//! the mode convention (`J1..J4`) with the quadrature convention
//! (`I1 = 4 J1`, `I2 = 4 J2`, `I3 = 4 J3`, `I4 = 16 J4`) derived from it.

mod invariants;
mod mode;
mod quad;
mod standard_form;
mod state_file;
mod states;
pub mod symplectic;

pub use invariants::{invariants_mode, invariants_quad, InvariantSet};
pub use mode::{mode_to_quad, quad_to_mode, ModeCovariance, SingleModeCovariance};
pub use quad::{validate_physical, PhysicalityReport, QuadCovariance};
pub use standard_form::{
    detect_special_form, standard_form_prep, LocalSymplectic, SpecialForm, StandardForm,
};
pub use state_file::StateFile;
pub use states::{
    random_state, special_form_state, thermal_state, tmsv_state, vacuum_state, Purity, Symmetry,
};

/// Absolute tolerance on symmetry (quadrature) and Hermiticity (mode) checks.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Slack allowed below the uncertainty bound `nu >= 1`.
pub const PHYSICALITY_TOL: f64 = 1e-9;
