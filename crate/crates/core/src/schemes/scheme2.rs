//! Scheme 2: all four invariants from mode 1 of the locally standardised
//! state.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use super::plan::{MeasurementPlan, Observable, PlanEntry};
use super::propagate;
use super::registry::{Preparation, Prior, Scheme};
use super::result::{
    InvariantErrors, J4Source, ReconstructedInvariants, SchemeResult, SchemeStatus,
    StandardFormEstimate,
};
use super::transcript::Transcript;
use crate::bench::BenchSetting;
use crate::entanglement::{eof_lower_bound, EntanglementReport, DEFAULT_SYM_TOL};
use crate::gaussian::{standard_form_prep, ModeCovariance};
use crate::{Error, Result};

/// `|m̃c|²` estimates in `[-CLAMP_SILENT, 0)` are set to zero quietly.
pub const CLAMP_SILENT: f64 = 1e-9;
/// Estimates in `[-CLAMP_LIMIT, -CLAMP_SILENT)` are set to zero with a
/// warning; anything lower is a reconstruction failure.
pub const CLAMP_LIMIT: f64 = 1e-6;

const S00: BenchSetting = BenchSetting::grid(0.0, 0.0);
const S90: BenchSetting = BenchSetting::grid(FRAC_PI_2, 0.0);
const S45_0: BenchSetting = BenchSetting::grid(FRAC_PI_4, 0.0);
const S45_90: BenchSetting = BenchSetting::grid(FRAC_PI_4, FRAC_PI_2);

use Observable::{Determinant as J, PhotonNumber as N};

const KEYS: [(BenchSetting, Observable); 5] =
    [(S00, N), (S90, N), (S45_0, N), (S45_90, N), (S45_0, J)];

#[derive(Debug, Clone, Copy, Default)]
pub struct SchemeTwo;

impl Scheme for SchemeTwo {
    fn name(&self) -> &'static str {
        "scheme2"
    }

    fn plan(&self) -> MeasurementPlan {
        MeasurementPlan {
            entries: [S00, S90, S45_0, S45_90]
                .into_iter()
                .map(|setting| PlanEntry {
                    setting,
                    observables: vec![N, J],
                })
                .collect(),
        }
    }

    fn prepare(&self, state: &ModeCovariance) -> Result<Preparation> {
        let sf = standard_form_prep(state)?;
        Ok(Preparation {
            state: sf.state,
            prior: Prior::default(),
            standard_form: Some(sf),
        })
    }

    fn reconstruct(&self, transcript: &Transcript, prior: &Prior) -> Result<SchemeResult> {
        let (x, se) = transcript.gather(&KEYS)?;
        let [n1, n2, n45, n45_90, j45]: [f64; 5] = x.try_into().expect("five keys");
        if !(n1 > 0.0 && n2 > 0.0) {
            return Err(Error::Reconstruction(format!(
                "non-positive standard-form photon numbers (n1 = {n1}, n2 = {n2})"
            )));
        }
        let mut warnings = Vec::new();

        let half = (n1 + n2) / 2.0;
        let ms_re = half - n45;
        let ms_im = half - n45_90;
        let ms_sq = ms_re * ms_re + ms_im * ms_im;
        let mut mc_sq = n45 * n45 - j45;
        if mc_sq < 0.0 {
            if mc_sq < -CLAMP_LIMIT {
                return Err(Error::Reconstruction(format!(
                    "|mc|^2 estimate {mc_sq:e} is below -{CLAMP_LIMIT:e}"
                )));
            }
            if mc_sq < -CLAMP_SILENT {
                let msg = format!("clamped negative |mc|^2 estimate {mc_sq:e} to zero");
                log::warn!("{msg}");
                warnings.push(msg);
            }
            mc_sq = 0.0;
        }

        let j1 = n1 * n1;
        let j2 = n2 * n2;
        let j3 = ms_sq - mc_sq;
        let s = ms_sq + mc_sq;
        let j4 = 2.0 * n1 * n2 * s;

        // Gradients over (N00, N90, N45,0, N45,90, J45,0):
        //   J3: (re + im, re + im, -2 re - 2 N45,0, -2 im, +1)
        //   J4: 2 n2 s + 2 n1 n2 (re + im), 2 n1 s + 2 n1 n2 (re + im),
        //       2 n1 n2 (2 N45,0 - 2 re), -4 n1 n2 im, -2 n1 n2
        let (re, im) = (ms_re, ms_im);
        let k = 2.0 * n1 * n2;
        let g1 = [2.0 * n1, 0.0, 0.0, 0.0, 0.0];
        let g2 = [0.0, 2.0 * n2, 0.0, 0.0, 0.0];
        let g3 = [re + im, re + im, -2.0 * re - 2.0 * n45, -2.0 * im, 1.0];
        let g4 = [
            2.0 * n2 * s + k * (re + im),
            2.0 * n1 * s + k * (re + im),
            k * (2.0 * n45 - 2.0 * re),
            -2.0 * k * im,
            -k,
        ];
        let stderr = (|| {
            Some(InvariantErrors {
                j1: propagate(&g1, &se)?,
                j2: propagate(&g2, &se)?,
                j3: propagate(&g3, &se)?,
                j4: Some(propagate(&g4, &se)?),
            })
        })();

        let invariants = ReconstructedInvariants {
            j1,
            j2,
            j3,
            j4: Some(j4),
            j4_source: Some(J4Source::Measured),
        };
        let full = invariants.complete().expect("j4 set");
        let entanglement = EntanglementReport::new(&full, DEFAULT_SYM_TOL)?;
        let eof_lower_bound = match eof_lower_bound(&invariants.without_j4()) {
            Ok(b) => Some(b),
            Err(Error::NotApplicable(_)) => None,
            Err(e) => return Err(e),
        };

        Ok(SchemeResult {
            scheme: self.name().into(),
            status: SchemeStatus::Complete,
            invariants,
            stderr,
            entanglement: Some(entanglement),
            eof_lower_bound,
            standard_form: Some(StandardFormEstimate {
                n1,
                n2,
                ms_re,
                ms_im,
                mc_abs_sq: mc_sq,
            }),
            preparation: None,
            prior: *prior,
            warnings,
            transcript: transcript.clone(),
        })
    }
}
