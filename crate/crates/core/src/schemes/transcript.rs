use serde::{Deserialize, Serialize};

use super::plan::Observable;
use crate::bench::BenchSetting;
use crate::{Error, Result};

/// One recorded value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TranscriptRecord {
    pub theta: f64,
    pub phi: f64,
    pub observable: Observable,
    pub value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stderr: Option<f64>,
}

/// Everything a scheme is allowed to see of the state: an ordered list of
/// `(setting, observable) -> value` records.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Transcript {
    records: Vec<TranscriptRecord>,
}

const SETTING_TOL: f64 = 1e-12;

impl Transcript {
    pub fn new(records: Vec<TranscriptRecord>) -> Self {
        Self { records }
    }

    pub fn push(&mut self, record: TranscriptRecord) {
        self.records.push(record);
    }

    pub fn records(&self) -> &[TranscriptRecord] {
        &self.records
    }

    /// First record for the given setting and observable.
    pub fn lookup(
        &self,
        setting: BenchSetting,
        observable: Observable,
    ) -> Result<&TranscriptRecord> {
        self.records
            .iter()
            .find(|r| {
                r.observable == observable
                    && (r.theta - setting.theta).abs() <= SETTING_TOL
                    && (r.phi - setting.phi).abs() <= SETTING_TOL
            })
            .ok_or_else(|| {
                Error::Reconstruction(format!(
                    "transcript lacks {observable:?} at theta = {}, phi = {}",
                    setting.theta, setting.phi
                ))
            })
    }

    pub fn value(
        &self,
        setting: BenchSetting,
        observable: Observable,
    ) -> Result<(f64, Option<f64>)> {
        self.lookup(setting, observable)
            .map(|r| (r.value, r.stderr))
    }

    /// Values and standard errors of `keys`, in order.
    pub fn gather(
        &self,
        keys: &[(BenchSetting, Observable)],
    ) -> Result<(Vec<f64>, Vec<Option<f64>>)> {
        keys.iter()
            .map(|&(s, o)| self.value(s, o))
            .collect::<Result<Vec<_>>>()
            .map(|v| v.into_iter().unzip())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcript serialises")
    }
}
