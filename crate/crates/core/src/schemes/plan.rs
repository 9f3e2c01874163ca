use serde::{Deserialize, Serialize};

use super::transcript::{Transcript, TranscriptRecord};
use crate::bench::{observe_mode1, BenchSetting, Detector};
use crate::gaussian::ModeCovariance;
use crate::Result;

/// The two primitive observables of output mode 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Observable {
    /// Mean photon number plus one half, `N'1`.
    #[serde(rename = "N")]
    PhotonNumber,
    /// Local covariance determinant `J'1` (from purity or `W(0)`).
    #[serde(rename = "J")]
    Determinant,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanEntry {
    pub setting: BenchSetting,
    pub observables: Vec<Observable>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasurementPlan {
    pub entries: Vec<PlanEntry>,
}

impl MeasurementPlan {
    pub fn count(&self, observable: Observable) -> usize {
        self.entries
            .iter()
            .filter(|e| e.observables.contains(&observable))
            .count()
    }
}

/// Runs every setting of `plan` on the bench and records the requested
/// observables.
pub fn acquire(
    plan: &MeasurementPlan,
    state: &ModeCovariance,
    detector: &dyn Detector,
    seed: u64,
) -> Result<Transcript> {
    let mut transcript = Transcript::default();
    for entry in &plan.entries {
        let obs = observe_mode1(state, &entry.setting, detector, seed)?;
        for &observable in &entry.observables {
            let (value, stderr) = match observable {
                Observable::PhotonNumber => (obs.n_prime, obs.n_stderr),
                Observable::Determinant => (obs.j_prime, obs.j_stderr),
            };
            transcript.push(TranscriptRecord {
                theta: entry.setting.theta,
                phi: entry.setting.phi,
                observable,
                value,
                stderr,
            });
        }
    }
    Ok(transcript)
}
