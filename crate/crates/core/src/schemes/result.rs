use serde::{Deserialize, Serialize};

use super::registry::Prior;
use super::transcript::Transcript;
use crate::entanglement::EntanglementReport;
use crate::gaussian::{InvariantSet, LocalSymplectic, StandardForm};

/// Where the reconstructed `J4` came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum J4Source {
    /// Built from measured standard-form entries.
    Measured,
    /// `2|J3|√(J1 J2)`, valid only under a special-form prior.
    SpecialForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeStatus {
    /// All four invariants are known; the full entanglement analysis ran.
    Complete,
    /// `J4` is unknown; only the entanglement-of-formation lower bound is
    /// reported.
    LowerBoundOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReconstructedInvariants {
    pub j1: f64,
    pub j2: f64,
    pub j3: f64,
    pub j4: Option<f64>,
    pub j4_source: Option<J4Source>,
}

impl ReconstructedInvariants {
    pub fn complete(&self) -> Option<InvariantSet> {
        self.j4
            .map(|j4| InvariantSet::new(self.j1, self.j2, self.j3, j4))
    }

    /// The set with `J4 = 0`, which is what the lower bound is evaluated on.
    pub fn without_j4(&self) -> InvariantSet {
        InvariantSet::new(self.j1, self.j2, self.j3, 0.0)
    }
}

/// First-order standard errors of the reconstructed invariants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InvariantErrors {
    pub j1: f64,
    pub j2: f64,
    pub j3: f64,
    pub j4: Option<f64>,
}

/// Standard-form entries recovered by the second scheme. Only `|mc|²` is
/// accessible, not the phase of `mc`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StandardFormEstimate {
    pub n1: f64,
    pub n2: f64,
    pub ms_re: f64,
    pub ms_im: f64,
    pub mc_abs_sq: f64,
}

/// Local operations applied before the state entered the bench, and how
/// well they zeroed the local `m` entries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PreparationSummary {
    pub s1: LocalSymplectic,
    pub s2: LocalSymplectic,
    pub m1_residual: f64,
    pub m2_residual: f64,
}

impl From<&StandardForm> for PreparationSummary {
    fn from(sf: &StandardForm) -> Self {
        Self {
            s1: sf.s1,
            s2: sf.s2,
            m1_residual: sf.state.m1.norm(),
            m2_residual: sf.state.m2.norm(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeResult {
    pub scheme: String,
    pub status: SchemeStatus,
    pub invariants: ReconstructedInvariants,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stderr: Option<InvariantErrors>,
    /// Full analysis on the reconstructed invariants, when `J4` is known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entanglement: Option<EntanglementReport>,
    /// Lower bound on the entanglement of formation (symmetric states only).
    pub eof_lower_bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub standard_form: Option<StandardFormEstimate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preparation: Option<PreparationSummary>,
    pub prior: Prior,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub transcript: Transcript,
}
