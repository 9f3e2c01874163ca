use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::detector::Detector;
use super::setting::BenchSetting;
use super::transform::output_mode1_covariance;
use crate::gaussian::{ModeCovariance, SingleModeCovariance};
use crate::{Error, Result};

/// What the detector reports for output mode 1 at one setting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mode1Observation {
    pub setting: BenchSetting,
    pub n_prime: f64,
    pub j_prime: f64,
    /// `Tr ρ'² = 1 / (2 sqrt(J'))`.
    pub purity: f64,
    /// Wigner function at the origin, `purity / pi`.
    pub wigner0: f64,
    pub n_stderr: Option<f64>,
    pub j_stderr: Option<f64>,
}

/// RNG stream of a setting, so each setting draws independent numbers from
/// the same seed regardless of the order in which settings are visited.
pub fn setting_stream(setting: &BenchSetting) -> u64 {
    let mut x = setting.theta.to_bits() ^ setting.phi.to_bits().rotate_left(29);
    // splitmix64 finaliser
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Runs the bench at `setting` on state `v` and measures output mode 1.
pub fn observe_mode1(
    v: &ModeCovariance,
    setting: &BenchSetting,
    detector: &dyn Detector,
    seed: u64,
) -> Result<Mode1Observation> {
    let block = SingleModeCovariance::from_matrix(&output_mode1_covariance(v, setting));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(setting_stream(setting));
    let m = detector.measure(&block, &mut rng)?;
    if !(m.j_prime > 0.0) || !m.n_prime.is_finite() {
        return Err(Error::UnphysicalMeasurement(format!(
            "J' = {} at theta = {}, phi = {}",
            m.j_prime, setting.theta, setting.phi
        )));
    }
    let purity = 0.5 / m.j_prime.sqrt();
    Ok(Mode1Observation {
        setting: *setting,
        n_prime: m.n_prime,
        j_prime: m.j_prime,
        purity,
        wigner0: purity / std::f64::consts::PI,
        n_stderr: m.n_stderr,
        j_stderr: m.j_stderr,
    })
}
