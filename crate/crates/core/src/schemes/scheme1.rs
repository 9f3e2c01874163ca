//! Scheme 1: `J1`, `J2`, `J3` from beam-splitter settings on the raw state.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::plan::{MeasurementPlan, Observable, PlanEntry};
use super::propagate;
use super::registry::{Preparation, Prior, Scheme};
use super::result::{
    InvariantErrors, J4Source, ReconstructedInvariants, SchemeResult, SchemeStatus,
};
use super::transcript::Transcript;
use crate::bench::BenchSetting;
use crate::entanglement::{eof_lower_bound, EntanglementReport, DEFAULT_SYM_TOL};
use crate::gaussian::{detect_special_form, standard_form_prep, ModeCovariance};
use crate::{Error, Result};

/// Tolerance used when classifying the prepared state as a special form.
pub const SPECIAL_FORM_TOL: f64 = 1e-9;

const S00: BenchSetting = BenchSetting::grid(0.0, 0.0);
const S90: BenchSetting = BenchSetting::grid(FRAC_PI_2, 0.0);
const S45_0: BenchSetting = BenchSetting::grid(FRAC_PI_4, 0.0);
const S45_PI: BenchSetting = BenchSetting::grid(FRAC_PI_4, PI);
const S45_90: BenchSetting = BenchSetting::grid(FRAC_PI_4, FRAC_PI_2);
const S45_M90: BenchSetting = BenchSetting::grid(FRAC_PI_4, -FRAC_PI_2);

use Observable::{Determinant as J, PhotonNumber as N};

/// Observation vector, in the order the gradients below assume.
const KEYS: [(BenchSetting, Observable); 10] = [
    (S00, J),
    (S90, J),
    (S45_0, J),
    (S45_PI, J),
    (S45_90, J),
    (S45_M90, J),
    (S00, N),
    (S90, N),
    (S45_0, N),
    (S45_90, N),
];

#[derive(Debug, Clone, Copy, Default)]
pub struct SchemeOne;

/// `(𝒥, 𝒩)`: the determinant and photon-number combinations whose sum is
/// `4 J3`.
pub fn j3_terms(x: &[f64; 10]) -> (f64, f64) {
    let [j00, j90, j45_0, j45_pi, j45_90, j45_m90, n00, n90, n45_0, n45_90] = *x;
    let cj = j45_0 + j45_pi + j45_90 + j45_m90 - j00 - j90;
    let cn = n00 * n00 + n90 * n90 + 2.0 * n45_0 * n45_0 + 2.0 * n45_90 * n45_90
        - 2.0 * (n00 + n90) * (n45_0 + n45_90);
    (cj, cn)
}

/// `∂J3/∂x`. With `P = N00 + N90` and `Q = N45,0 + N45,90`:
/// `∂/∂N00 = (2 N00 - 2Q)/4`, `∂/∂N45,0 = (4 N45,0 - 2P)/4`, and every `J'`
/// enters with `±1/4`.
fn j3_gradient(x: &[f64; 10]) -> [f64; 10] {
    let (n00, n90, n45_0, n45_90) = (x[6], x[7], x[8], x[9]);
    let p = n00 + n90;
    let q = n45_0 + n45_90;
    [
        -1.0,
        -1.0,
        1.0,
        1.0,
        1.0,
        1.0,
        2.0 * n00 - 2.0 * q,
        2.0 * n90 - 2.0 * q,
        4.0 * n45_0 - 2.0 * p,
        4.0 * n45_90 - 2.0 * p,
    ]
    .map(|d| d / 4.0)
}

impl Scheme for SchemeOne {
    fn name(&self) -> &'static str {
        "scheme1"
    }

    fn plan(&self) -> MeasurementPlan {
        let both = vec![N, J];
        let entries = [
            (S00, both.clone()),
            (S90, both.clone()),
            (S45_0, both.clone()),
            (S45_PI, vec![J]),
            (S45_90, both),
            (S45_M90, vec![J]),
        ];
        MeasurementPlan {
            entries: entries
                .into_iter()
                .map(|(setting, observables)| PlanEntry {
                    setting,
                    observables,
                })
                .collect(),
        }
    }

    /// The state goes onto the bench untouched. The special-form prior is
    /// established here, from the state, because it is structural knowledge
    /// the measurements cannot supply.
    fn prepare(&self, state: &ModeCovariance) -> Result<Preparation> {
        let sf = standard_form_prep(state)?;
        Ok(Preparation {
            state: *state,
            prior: Prior {
                special_form: detect_special_form(&sf.state, SPECIAL_FORM_TOL)?,
            },
            standard_form: None,
        })
    }

    fn reconstruct(&self, transcript: &Transcript, prior: &Prior) -> Result<SchemeResult> {
        let (values, stderr) = transcript.gather(&KEYS)?;
        let x: [f64; 10] = values.try_into().expect("ten keys");
        let (j1, j2) = (x[0], x[1]);
        if !(j1 > 0.0 && j2 > 0.0) {
            return Err(Error::Reconstruction(format!(
                "non-positive local determinant (J1 = {j1}, J2 = {j2})"
            )));
        }
        let (cj, cn) = j3_terms(&x);
        let j3 = (cj + cn) / 4.0;
        let g3 = j3_gradient(&x);

        let (j4, j4_grad) = match prior.special_form {
            Some(_) => {
                let root = (j1 * j2).sqrt();
                let mut g: [f64; 10] = g3.map(|d| 2.0 * j3.signum() * root * d);
                g[0] += j3.abs() * (j2 / j1).sqrt();
                g[1] += j3.abs() * (j1 / j2).sqrt();
                (Some(2.0 * j3.abs() * root), Some(g))
            }
            None => (None, None),
        };

        let invariants = ReconstructedInvariants {
            j1,
            j2,
            j3,
            j4,
            j4_source: j4.map(|_| J4Source::SpecialForm),
        };
        let eof_lower_bound = match eof_lower_bound(&invariants.without_j4()) {
            Ok(b) => Some(b),
            Err(Error::NotApplicable(_)) => None,
            Err(e) => return Err(e),
        };
        let entanglement = invariants
            .complete()
            .map(|inv| EntanglementReport::new(&inv, DEFAULT_SYM_TOL))
            .transpose()?;

        let e = |i: usize| {
            let mut g = [0.0; 10];
            g[i] = 1.0;
            g
        };
        let stderr = propagate(&e(0), &stderr).and_then(|s1| {
            Some(InvariantErrors {
                j1: s1,
                j2: propagate(&e(1), &stderr)?,
                j3: propagate(&g3, &stderr)?,
                j4: j4_grad.and_then(|g| propagate(&g, &stderr)),
            })
        });

        Ok(SchemeResult {
            scheme: self.name().into(),
            status: if entanglement.is_some() {
                SchemeStatus::Complete
            } else {
                SchemeStatus::LowerBoundOnly
            },
            invariants,
            stderr,
            entanglement,
            eof_lower_bound,
            standard_form: None,
            preparation: None,
            prior: *prior,
            warnings: Vec::new(),
            transcript: transcript.clone(),
        })
    }
}
