//! Self-contained run reports: the input state, the oracle, each scheme's
//! reconstruction with its transcript, and the deltas between them.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::bench::{DetectorConfig, DetectorRegistry};
use crate::entanglement::{EntanglementReport, DEFAULT_SYM_TOL};
use crate::gaussian::{
    invariants_quad, quad_to_mode, random_state, special_form_state, thermal_state, tmsv_state,
    vacuum_state, InvariantSet, PhysicalityReport, Purity, QuadCovariance, SpecialForm, StateFile,
    Symmetry,
};
use crate::schemes::{consistency_check, ConsistencyReport, SchemeRegistry, SchemeResult};
use crate::{Error, Result};

/// Tolerance of the cross-scheme check embedded in reports.
pub const CONSISTENCY_TOL: f64 = 1e-9;

/// Where the input state comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StateSource {
    File {
        path: PathBuf,
    },
    Vacuum,
    Thermal {
        nu1: f64,
        nu2: f64,
    },
    Tmsv {
        r: f64,
    },
    Random {
        seed: u64,
        purity: Purity,
        symmetry: Symmetry,
    },
    Special {
        seed: u64,
        form: SpecialForm,
    },
}

impl StateSource {
    pub fn load(&self) -> Result<QuadCovariance> {
        let finite = |name: &str, x: f64| {
            if x.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidInput(format!("{name} = {x} is not finite")))
            }
        };
        Ok(match *self {
            StateSource::File { ref path } => StateFile::load(path)?.quad()?,
            StateSource::Vacuum => vacuum_state(),
            StateSource::Thermal { nu1, nu2 } => {
                finite("nu1", nu1)?;
                finite("nu2", nu2)?;
                thermal_state(nu1, nu2)
            }
            StateSource::Tmsv { r } => {
                finite("r", r)?;
                tmsv_state(r)
            }
            StateSource::Random {
                seed,
                purity,
                symmetry,
            } => random_state(seed, purity, symmetry),
            StateSource::Special { seed, form } => special_form_state(seed, form),
        })
    }
}

/// Invariants and entanglement computed directly from the covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleSection {
    pub invariants: InvariantSet,
    pub entanglement: EntanglementReport,
}

pub fn oracle(g: &QuadCovariance) -> Result<OracleSection> {
    let invariants = invariants_quad(g);
    Ok(OracleSection {
        invariants,
        entanglement: EntanglementReport::new(&invariants, DEFAULT_SYM_TOL)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantDelta {
    pub name: String,
    pub oracle: f64,
    pub scheme: f64,
    pub abs: f64,
    /// `abs / |oracle|`; absent when the oracle value is exactly zero.
    pub rel: Option<f64>,
}

impl InvariantDelta {
    fn new(name: &str, oracle: f64, scheme: f64) -> Self {
        let abs = (scheme - oracle).abs();
        Self {
            name: name.into(),
            oracle,
            scheme,
            abs,
            rel: (oracle != 0.0).then(|| abs / oracle.abs()),
        }
    }
}

/// Per-invariant deltas against the oracle; `J4` only when reconstructed.
pub fn invariant_deltas(oracle: &InvariantSet, result: &SchemeResult) -> Vec<InvariantDelta> {
    let r = &result.invariants;
    let mut out = vec![
        InvariantDelta::new("J1", oracle.j1, r.j1),
        InvariantDelta::new("J2", oracle.j2, r.j2),
        InvariantDelta::new("J3", oracle.j3, r.j3),
    ];
    if let Some(j4) = r.j4 {
        out.push(InvariantDelta::new("J4", oracle.j4, j4));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchemeSection {
    pub result: SchemeResult,
    pub deltas: Vec<InvariantDelta>,
}

/// What to run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRequest {
    pub source: StateSource,
    pub seed: u64,
    /// Scheme names; empty for an oracle-only run.
    pub schemes: Vec<String>,
    pub detector: DetectorConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub seed: u64,
    pub source: StateSource,
    pub state: StateFile,
    pub physicality: PhysicalityReport,
    pub detector: DetectorConfig,
    pub oracle: OracleSection,
    pub schemes: Vec<SchemeSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub consistency: Option<ConsistencyReport>,
}

impl RunReport {
    pub fn scheme(&self, name: &str) -> Option<&SchemeResult> {
        self.schemes
            .iter()
            .map(|s| &s.result)
            .find(|r| r.scheme == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Loads the state, checks it is physical, evaluates the oracle and runs the
/// requested schemes.
pub fn run(
    req: &RunRequest,
    schemes: &SchemeRegistry,
    detectors: &DetectorRegistry,
) -> Result<RunReport> {
    let g = req.source.load()?;
    let physicality = g.ensure_physical()?;
    let v = quad_to_mode(&g);
    let oracle = oracle(&g)?;
    // Resolve everything before running so configuration errors win over
    // reconstruction failures.
    let detector = detectors.build(&req.detector)?;
    let resolved = req
        .schemes
        .iter()
        .map(|name| schemes.get(name))
        .collect::<Result<Vec<_>>>()?;

    let mut sections = Vec::with_capacity(resolved.len());
    for scheme in resolved {
        let result = scheme.run(&v, detector.as_ref(), req.seed)?;
        sections.push(SchemeSection {
            deltas: invariant_deltas(&oracle.invariants, &result),
            result,
        });
    }
    let consistency = match sections.as_slice() {
        [a, b] => Some(consistency_check(&a.result, &b.result, CONSISTENCY_TOL)),
        _ => None,
    };
    Ok(RunReport {
        seed: req.seed,
        source: req.source.clone(),
        state: StateFile::from_quad(&g),
        physicality,
        detector: req.detector.clone(),
        oracle,
        schemes: sections,
        consistency,
    })
}

/// Outcome of re-running one scheme's reconstruction on its embedded
/// transcript.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplayCheck {
    pub scheme: String,
    /// Reconstructed invariants are bit-identical to the reported ones.
    pub identical: bool,
    pub replayed: SchemeResult,
}

pub fn replay(report: &RunReport, schemes: &SchemeRegistry) -> Result<Vec<ReplayCheck>> {
    report
        .schemes
        .iter()
        .map(|section| {
            let reported = &section.result;
            let scheme = schemes.get(&reported.scheme)?;
            let mut replayed = scheme.reconstruct(&reported.transcript, &reported.prior)?;
            replayed.preparation = reported.preparation;
            Ok(ReplayCheck {
                scheme: reported.scheme.clone(),
                identical: replayed.invariants == reported.invariants
                    && replayed.entanglement == reported.entanglement,
                replayed,
            })
        })
        .collect()
}

/// One line of a sweep table. Scheme columns come from the first scheme of
/// the run; entanglement columns from that scheme when it has a full report,
/// else from the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub param: f64,
    #[serde(rename = "J1_oracle")]
    pub j1_oracle: f64,
    #[serde(rename = "J2_oracle")]
    pub j2_oracle: f64,
    #[serde(rename = "J3_oracle")]
    pub j3_oracle: f64,
    #[serde(rename = "J4_oracle")]
    pub j4_oracle: f64,
    #[serde(rename = "J1_scheme")]
    pub j1_scheme: Option<f64>,
    #[serde(rename = "J2_scheme")]
    pub j2_scheme: Option<f64>,
    #[serde(rename = "J3_scheme")]
    pub j3_scheme: Option<f64>,
    #[serde(rename = "J4_scheme")]
    pub j4_scheme: Option<f64>,
    #[serde(rename = "E_f")]
    pub eof: Option<f64>,
    #[serde(rename = "E_f_bound")]
    pub eof_bound: Option<f64>,
    #[serde(rename = "E_N")]
    pub log_negativity: f64,
    pub simon_margin: f64,
    /// Smaller symplectic eigenvalue of the partial transpose.
    pub nu_minus: f64,
}

/// Column names of [`SweepRow`], in order.
pub const SWEEP_COLUMNS: [&str; 14] = [
    "param",
    "J1_oracle",
    "J2_oracle",
    "J3_oracle",
    "J4_oracle",
    "J1_scheme",
    "J2_scheme",
    "J3_scheme",
    "J4_scheme",
    "E_f",
    "E_f_bound",
    "E_N",
    "simon_margin",
    "nu_minus",
];

impl SweepRow {
    pub fn new(param: f64, report: &RunReport) -> Self {
        let o = &report.oracle;
        let scheme = report.schemes.first().map(|s| &s.result);
        let ent = scheme
            .and_then(|s| s.entanglement)
            .unwrap_or(o.entanglement);
        let inv = scheme.map(|s| s.invariants);
        Self {
            param,
            j1_oracle: o.invariants.j1,
            j2_oracle: o.invariants.j2,
            j3_oracle: o.invariants.j3,
            j4_oracle: o.invariants.j4,
            j1_scheme: inv.map(|i| i.j1),
            j2_scheme: inv.map(|i| i.j2),
            j3_scheme: inv.map(|i| i.j3),
            j4_scheme: inv.and_then(|i| i.j4),
            eof: ent.eof,
            eof_bound: scheme.map_or(o.entanglement.eof_lower_bound, |s| s.eof_lower_bound),
            log_negativity: ent.log_negativity,
            simon_margin: ent.simon_margin,
            nu_minus: ent.nu_tilde_minus,
        }
    }
}
