//! Detector strategies, selected by name through [`DetectorRegistry`].

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::loss::{apply_loss, check_efficiency, invert_loss_homodyne, invert_loss_photocount};
use super::sampling::{sample_variance, HOMODYNE_ANGLES};
use crate::gaussian::SingleModeCovariance;
use crate::{Error, Result};

pub const IDEAL: &str = "ideal";
pub const LOSSY_PHOTOCOUNT: &str = "lossy-photocount";
pub const LOSSY_HOMODYNE: &str = "lossy-homodyne";

/// Detector parameters as they appear in configs and reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectorConfig {
    pub kind: String,
    pub eta: f64,
    /// Samples per measured quantity; `None` means unlimited statistics.
    pub shots: Option<u64>,
}

impl DetectorConfig {
    pub fn ideal() -> Self {
        Self {
            kind: IDEAL.into(),
            eta: 1.0,
            shots: None,
        }
    }

    pub fn homodyne(eta: f64, shots: Option<u64>) -> Self {
        Self {
            kind: LOSSY_HOMODYNE.into(),
            eta,
            shots,
        }
    }

    pub fn photocount(eta: f64, shots: Option<u64>) -> Self {
        Self {
            kind: LOSSY_PHOTOCOUNT.into(),
            eta,
            shots,
        }
    }
}

/// Loss-corrected values of the two primitive observables of one setting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement {
    /// `N'1 = <a'† a'> + 1/2`.
    pub n_prime: f64,
    /// `J'1 = det V'1`.
    pub j_prime: f64,
    pub n_stderr: Option<f64>,
    pub j_stderr: Option<f64>,
}

/// A way of measuring photon number and purity of output mode 1.
pub trait Detector: Send + Sync + fmt::Debug {
    fn config(&self) -> DetectorConfig;

    /// Measures the mode whose exact covariance is `block`. Randomness, if
    /// any, is drawn from `rng` only.
    fn measure(&self, block: &SingleModeCovariance, rng: &mut ChaCha8Rng) -> Result<Measurement>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct IdealDetector;

impl Detector for IdealDetector {
    fn config(&self) -> DetectorConfig {
        DetectorConfig::ideal()
    }

    fn measure(&self, block: &SingleModeCovariance, _rng: &mut ChaCha8Rng) -> Result<Measurement> {
        Ok(Measurement {
            n_prime: block.photon_number(),
            j_prime: block.det(),
            n_stderr: None,
            j_stderr: None,
        })
    }
}

/// Photon counting plus a purity (or `W(0)`) measurement through a lossy
/// detector, corrected for the known efficiency.
///
/// Finite statistics are modelled as Gaussian noise on the raw values:
/// the photon number with the photon-number variance of the measured mode,
/// the determinant with relative error `2/sqrt(shots)`, which is the spread
/// of a 2x2 sample-covariance determinant.
#[derive(Debug, Clone, Copy)]
pub struct PhotocountDetector {
    pub eta: f64,
    pub shots: Option<u64>,
}

impl Detector for PhotocountDetector {
    fn config(&self) -> DetectorConfig {
        DetectorConfig::photocount(self.eta, self.shots)
    }

    fn measure(&self, block: &SingleModeCovariance, rng: &mut ChaCha8Rng) -> Result<Measurement> {
        let lossy = apply_loss(block, self.eta)?;
        let (mut n_meas, mut j_meas) = (lossy.photon_number(), lossy.det());
        let errors = self.shots.map(|shots| {
            let shots = shots as f64;
            let se_n = (lossy.photon_number_variance().max(0.0) / shots).sqrt();
            let se_j = 2.0 * j_meas / shots.sqrt();
            (se_n, se_j)
        });
        if let Some((se_n, se_j)) = errors {
            n_meas += se_n * rng.sample::<f64, _>(StandardNormal);
            j_meas += se_j * rng.sample::<f64, _>(StandardNormal);
        }
        let (n_prime, j_prime) = invert_loss_photocount(n_meas, j_meas, self.eta)?;
        let eta = self.eta;
        // N = (N_meas - (1-eta)/2)/eta, J = (J_meas - eta(1-eta) N - (1-eta)²/4)/eta²
        // => dN/dN_meas = 1/eta, dJ/dJ_meas = 1/eta², dJ/dN_meas = -(1-eta)/eta².
        let (n_stderr, j_stderr) = match errors {
            Some((se_n, se_j)) => (
                Some(se_n / eta),
                Some(
                    ((se_j / (eta * eta)).powi(2) + ((1.0 - eta) / (eta * eta) * se_n).powi(2))
                        .sqrt(),
                ),
            ),
            None => (None, None),
        };
        Ok(Measurement {
            n_prime,
            j_prime,
            n_stderr,
            j_stderr,
        })
    }
}

/// Homodyne reconstruction of the single-mode covariance from the variances
/// at [`HOMODYNE_ANGLES`], each measured with `shots` samples through a lossy
/// detector and corrected for the known efficiency.
#[derive(Debug, Clone, Copy)]
pub struct HomodyneDetector {
    pub eta: f64,
    pub shots: Option<u64>,
}

/// Least-squares fit of `V(t) = a cos²t + b sin²t + 2c sin t cos t` to the
/// variances at `0, pi/4, pi/2, 3pi/4`, as gradients over those variances.
const FIT_A: [f64; 4] = [0.75, 0.25, -0.25, 0.25];
const FIT_B: [f64; 4] = [-0.25, 0.25, 0.75, 0.25];
const FIT_C: [f64; 4] = [0.0, 0.5, 0.0, -0.5];

fn dot(w: &[f64; 4], v: &[f64; 4]) -> f64 {
    w.iter().zip(v).map(|(a, b)| a * b).sum()
}

impl Detector for HomodyneDetector {
    fn config(&self) -> DetectorConfig {
        DetectorConfig::homodyne(self.eta, self.shots)
    }

    fn measure(&self, block: &SingleModeCovariance, rng: &mut ChaCha8Rng) -> Result<Measurement> {
        let eta = self.eta;
        let lossy = apply_loss(block, eta)?;
        let mut vars = [0.0; 4];
        let mut ses = [0.0; 4];
        for (k, angle) in HOMODYNE_ANGLES.into_iter().enumerate() {
            let truth = lossy.quadrature_variance(angle);
            match self.shots {
                Some(shots) => {
                    let est = sample_variance(truth, shots, rng)?;
                    vars[k] = est.variance;
                    ses[k] = est.stderr;
                }
                None => vars[k] = truth,
            }
        }
        let (a, b, c) = (dot(&FIT_A, &vars), dot(&FIT_B, &vars), dot(&FIT_C, &vars));
        let mid = 0.5 * (a + b);
        let half_gap = (0.25 * (a - b).powi(2) + c * c).sqrt();
        let corr = invert_loss_homodyne(mid - half_gap, mid + half_gap, eta)?;

        // Corrected covariance c11 = (a-1+eta)/eta, c22 = (b-1+eta)/eta,
        // c12 = c/eta, with N' = (c11+c22)/4 and J' = (c11 c22 - c12²)/4:
        //   dN'/dV_k = (FIT_A + FIT_B)_k / (4 eta) = 1/(8 eta),
        //   dJ'/dV_k = (c22 FIT_A_k + c11 FIT_B_k - 2 c12 FIT_C_k) / (4 eta).
        // The four angles are sampled independently.
        let (n_stderr, j_stderr) = if self.shots.is_some() {
            let c11 = (a - 1.0 + eta) / eta;
            let c22 = (b - 1.0 + eta) / eta;
            let c12 = c / eta;
            let (mut n_var, mut j_var) = (0.0, 0.0);
            for k in 0..4 {
                let dn = (FIT_A[k] + FIT_B[k]) / (4.0 * eta);
                let dj = (c22 * FIT_A[k] + c11 * FIT_B[k] - 2.0 * c12 * FIT_C[k]) / (4.0 * eta);
                n_var += (dn * ses[k]).powi(2);
                j_var += (dj * ses[k]).powi(2);
            }
            (Some(n_var.sqrt()), Some(j_var.sqrt()))
        } else {
            (None, None)
        };
        Ok(Measurement {
            n_prime: corr.n_prime,
            j_prime: corr.j_prime,
            n_stderr,
            j_stderr,
        })
    }
}

type Factory = Box<dyn Fn(&DetectorConfig) -> Result<Box<dyn Detector>> + Send + Sync>;

/// Name -> detector constructor.
pub struct DetectorRegistry {
    factories: BTreeMap<String, Factory>,
}

impl fmt::Debug for DetectorRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.factories.keys()).finish()
    }
}

fn finite_shots(cfg: &DetectorConfig, min: u64) -> Result<()> {
    match cfg.shots {
        Some(s) if s < min => Err(Error::InvalidInput(format!(
            "{} detector needs at least {min} shots, got {s}",
            cfg.kind
        ))),
        _ => Ok(()),
    }
}

impl DetectorRegistry {
    pub fn empty() -> Self {
        Self {
            factories: BTreeMap::new(),
        }
    }

    /// Registry holding `ideal`, `lossy-photocount` and `lossy-homodyne`
    /// (the latter two also as `photocount` and `homodyne`).
    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register(IDEAL, |cfg| {
            if cfg.eta != 1.0 || cfg.shots.is_some() {
                return Err(Error::InvalidInput(
                    "the ideal detector takes neither eta nor shots".into(),
                ));
            }
            Ok(Box::new(IdealDetector))
        });
        let photocount = |cfg: &DetectorConfig| -> Result<Box<dyn Detector>> {
            check_efficiency(cfg.eta)?;
            finite_shots(cfg, 1)?;
            Ok(Box::new(PhotocountDetector {
                eta: cfg.eta,
                shots: cfg.shots,
            }))
        };
        let homodyne = |cfg: &DetectorConfig| -> Result<Box<dyn Detector>> {
            check_efficiency(cfg.eta)?;
            finite_shots(cfg, 2)?;
            Ok(Box::new(HomodyneDetector {
                eta: cfg.eta,
                shots: cfg.shots,
            }))
        };
        r.register(LOSSY_PHOTOCOUNT, photocount);
        r.register("photocount", photocount);
        r.register(LOSSY_HOMODYNE, homodyne);
        r.register("homodyne", homodyne);
        r
    }

    pub fn register<F>(&mut self, name: &str, factory: F)
    where
        F: Fn(&DetectorConfig) -> Result<Box<dyn Detector>> + Send + Sync + 'static,
    {
        self.factories.insert(name.to_string(), Box::new(factory));
    }

    pub fn names(&self) -> Vec<&str> {
        self.factories.keys().map(String::as_str).collect()
    }

    pub fn build(&self, cfg: &DetectorConfig) -> Result<Box<dyn Detector>> {
        let factory = self
            .factories
            .get(&cfg.kind)
            .ok_or_else(|| Error::Unknown {
                kind: "detector",
                name: cfg.kind.clone(),
                known: self.names().join(", "),
            })?;
        factory(cfg)
    }
}

impl Default for DetectorRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;
    use rand::SeedableRng;

    fn block() -> SingleModeCovariance {
        SingleModeCovariance::new(1.4, C64::new(0.5, -0.3))
    }

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(1)
    }

    #[test]
    fn registry_builds_by_name() {
        let reg = DetectorRegistry::with_builtins();
        assert!(reg.build(&DetectorConfig::ideal()).is_ok());
        let h = reg
            .build(&DetectorConfig {
                kind: "homodyne".into(),
                eta: 0.8,
                shots: Some(10),
            })
            .unwrap();
        assert_eq!(h.config().kind, LOSSY_HOMODYNE);
        let err = reg.build(&DetectorConfig {
            kind: "bolometer".into(),
            eta: 1.0,
            shots: None,
        });
        assert!(matches!(err, Err(Error::Unknown { .. })));
        assert!(reg.build(&DetectorConfig::homodyne(0.8, Some(0))).is_err());
        assert!(reg
            .build(&DetectorConfig::photocount(0.8, Some(0)))
            .is_err());
        assert!(reg.build(&DetectorConfig::homodyne(1.2, None)).is_err());
        assert!(reg
            .build(&DetectorConfig {
                kind: IDEAL.into(),
                eta: 0.5,
                shots: None
            })
            .is_err());
    }

    #[test]
    fn unlimited_lossy_detectors_recover_ideal_values() {
        let b = block();
        for eta in [0.5, 0.7, 0.9, 1.0] {
            for det in [
                Box::new(HomodyneDetector { eta, shots: None }) as Box<dyn Detector>,
                Box::new(PhotocountDetector { eta, shots: None }),
            ] {
                let m = det.measure(&b, &mut rng()).unwrap();
                assert!((m.n_prime - b.n).abs() < 1e-12, "{det:?}");
                assert!((m.j_prime - b.det()).abs() < 1e-12, "{det:?}");
                assert!(m.n_stderr.is_none());
            }
        }
    }

    #[test]
    fn finite_shots_scatter_within_reported_errors() {
        let b = block();
        for det in [
            Box::new(HomodyneDetector {
                eta: 0.8,
                shots: Some(20_000),
            }) as Box<dyn Detector>,
            Box::new(PhotocountDetector {
                eta: 0.8,
                shots: Some(20_000),
            }),
        ] {
            let mut r = rng();
            let ms: Vec<Measurement> = (0..200).map(|_| det.measure(&b, &mut r).unwrap()).collect();
            let mean_j = ms.iter().map(|m| m.j_prime).sum::<f64>() / 200.0;
            let sd_j =
                (ms.iter().map(|m| (m.j_prime - mean_j).powi(2)).sum::<f64>() / 199.0).sqrt();
            let reported = ms[0].j_stderr.unwrap();
            assert!(
                (mean_j - b.det()).abs() < 4.0 * sd_j / 200f64.sqrt(),
                "{det:?}"
            );
            assert!(
                (sd_j / reported - 1.0).abs() < 0.25,
                "{det:?}: {sd_j} vs {reported}"
            );
            let mean_n = ms.iter().map(|m| m.n_prime).sum::<f64>() / 200.0;
            let sd_n =
                (ms.iter().map(|m| (m.n_prime - mean_n).powi(2)).sum::<f64>() / 199.0).sqrt();
            assert!(
                (sd_n / ms[0].n_stderr.unwrap() - 1.0).abs() < 0.25,
                "{det:?}"
            );
        }
    }
}
