//! Measurement protocols that turn single-mode observations into the four
//! invariants.
//!
//! Each protocol implements [`Scheme`]: it declares a [`MeasurementPlan`],
//! optionally prepares the state with local operations, and reconstructs
//! invariants from a [`Transcript`] of observations alone. Protocols are
//! looked up by name in a [`SchemeRegistry`].

mod consistency;
mod plan;
mod registry;
mod result;
mod scheme1;
mod scheme2;
mod transcript;

pub use consistency::{consistency_check, ConsistencyReport};
pub use plan::{acquire, MeasurementPlan, Observable, PlanEntry};
pub use registry::{Preparation, Prior, Scheme, SchemeRegistry};
pub use result::{
    InvariantErrors, J4Source, PreparationSummary, ReconstructedInvariants, SchemeResult,
    SchemeStatus, StandardFormEstimate,
};
pub use scheme1::SchemeOne;
pub use scheme2::SchemeTwo;
pub use transcript::{Transcript, TranscriptRecord};

/// First-order error `sqrt(Σ (∂f/∂x_k σ_k)²)` for independent observations
/// `x_k`; `None` if any observation with a nonzero partial lacks `σ_k`.
pub(crate) fn propagate(grad: &[f64], stderr: &[Option<f64>]) -> Option<f64> {
    grad.iter()
        .zip(stderr)
        .map(|(d, se)| match se {
            Some(s) => Some((d * s).powi(2)),
            None if *d == 0.0 => Some(0.0),
            None => None,
        })
        .sum::<Option<f64>>()
        .map(f64::sqrt)
}
