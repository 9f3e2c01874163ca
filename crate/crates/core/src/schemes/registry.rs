use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::plan::{acquire, MeasurementPlan};
use super::result::{PreparationSummary, SchemeResult};
use super::scheme1::SchemeOne;
use super::scheme2::SchemeTwo;
use super::transcript::Transcript;
use crate::bench::Detector;
use crate::gaussian::{ModeCovariance, SpecialForm, StandardForm};
use crate::{Error, Result};

/// Structural knowledge about the state that a scheme may rely on but cannot
/// measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Prior {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub special_form: Option<SpecialForm>,
}

/// What goes onto the bench, plus what the scheme knows beforehand.
#[derive(Debug, Clone, PartialEq)]
pub struct Preparation {
    pub state: ModeCovariance,
    pub prior: Prior,
    pub standard_form: Option<StandardForm>,
}

/// A measurement protocol.
///
/// `reconstruct` sees only the transcript and the prior, never the state.
pub trait Scheme: Send + Sync + fmt::Debug {
    fn name(&self) -> &'static str;

    fn plan(&self) -> MeasurementPlan;

    fn prepare(&self, state: &ModeCovariance) -> Result<Preparation>;

    fn reconstruct(&self, transcript: &Transcript, prior: &Prior) -> Result<SchemeResult>;

    /// prepare -> acquire -> reconstruct.
    fn run(
        &self,
        state: &ModeCovariance,
        detector: &dyn Detector,
        seed: u64,
    ) -> Result<SchemeResult> {
        let prep = self.prepare(state)?;
        let transcript = acquire(&self.plan(), &prep.state, detector, seed)?;
        let mut result = self.reconstruct(&transcript, &prep.prior)?;
        result.preparation = prep.standard_form.as_ref().map(PreparationSummary::from);
        Ok(result)
    }
}

/// Name -> scheme.
#[derive(Debug, Clone)]
pub struct SchemeRegistry {
    schemes: BTreeMap<String, Arc<dyn Scheme>>,
}

impl SchemeRegistry {
    pub fn empty() -> Self {
        Self {
            schemes: BTreeMap::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register(Arc::new(SchemeOne));
        r.register(Arc::new(SchemeTwo));
        r
    }

    pub fn register(&mut self, scheme: Arc<dyn Scheme>) {
        self.schemes.insert(scheme.name().to_string(), scheme);
    }

    pub fn names(&self) -> Vec<&str> {
        self.schemes.keys().map(String::as_str).collect()
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn Scheme>> {
        self.schemes
            .get(name)
            .cloned()
            .ok_or_else(|| Error::Unknown {
                kind: "scheme",
                name: name.to_string(),
                known: self.names().join(", "),
            })
    }
}

impl Default for SchemeRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}
