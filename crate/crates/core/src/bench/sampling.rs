//! Finite-shot homodyne statistics.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::loss::apply_loss;
use super::observation::setting_stream;
use super::setting::BenchSetting;
use super::transform::output_mode1_covariance;
use crate::gaussian::{ModeCovariance, SingleModeCovariance};
use crate::{Error, Result};

/// Quadrature angles `0, pi/4, pi/2, 3pi/4`. Three would fix the 2x2
/// covariance; the fourth balances the design so that no entry has to be
/// obtained by cancelling two large variances.
pub const HOMODYNE_ANGLES: [f64; 4] = [0.0, FRAC_PI_4, FRAC_PI_2, 3.0 * FRAC_PI_4];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VarianceEstimate {
    /// Unbiased sample variance.
    pub variance: f64,
    /// `sqrt(2/(shots-1)) · variance`.
    pub stderr: f64,
}

/// Draws `shots` zero-mean Gaussian samples of the given variance and returns
/// their sample variance.
pub fn sample_variance<R: Rng + ?Sized>(
    true_variance: f64,
    shots: u64,
    rng: &mut R,
) -> Result<VarianceEstimate> {
    if shots < 2 {
        return Err(Error::InvalidInput(format!(
            "need at least 2 shots, got {shots}"
        )));
    }
    if !(true_variance >= 0.0) {
        return Err(Error::InvalidInput(format!("variance {true_variance} < 0")));
    }
    let sigma = true_variance.sqrt();
    let (mut sum, mut sum_sq) = (0.0f64, 0.0f64);
    for _ in 0..shots {
        let x: f64 = rng.sample::<f64, _>(StandardNormal) * sigma;
        sum += x;
        sum_sq += x * x;
    }
    let n = shots as f64;
    let variance = (sum_sq - sum * sum / n) / (n - 1.0);
    Ok(VarianceEstimate {
        variance,
        stderr: (2.0 / (n - 1.0)).sqrt() * variance,
    })
}

/// Homodyne estimate of the variance of `X cos(angle) + P sin(angle)` of
/// output mode 1, measured through a detector of efficiency `eta`.
pub fn sample_quadratures(
    v: &ModeCovariance,
    setting: &BenchSetting,
    angle: f64,
    shots: u64,
    eta: f64,
    seed: u64,
) -> Result<VarianceEstimate> {
    let block = SingleModeCovariance::from_matrix(&output_mode1_covariance(v, setting));
    let lossy = apply_loss(&block, eta)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(setting_stream(setting));
    sample_variance(lossy.quadrature_variance(angle), shots, &mut rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::{quad_to_mode, tmsv_state};

    #[test]
    fn vacuum_variance_tends_to_one() {
        let v = ModeCovariance::vacuum();
        let s = BenchSetting::grid(0.3, 0.2);
        for angle in HOMODYNE_ANGLES {
            let e = sample_quadratures(&v, &s, angle, 200_000, 1.0, 4).unwrap();
            assert!((e.variance - 1.0).abs() < 4.0 * e.stderr);
            assert!(e.stderr < 0.004);
        }
    }

    #[test]
    fn tmsv_reduced_mode_is_thermal() {
        let r: f64 = 0.5;
        let v = quad_to_mode(&tmsv_state(r));
        let block = SingleModeCovariance::from_matrix(&output_mode1_covariance(
            &v,
            &BenchSetting::grid(0.0, 0.0),
        ));
        assert!((block.quadrature_variance(0.0) - (2.0 * r).cosh()).abs() < 1e-14);
        assert!((block.quadrature_variance(1.1) - (2.0 * r).cosh()).abs() < 1e-14);
    }

    #[test]
    fn estimator_is_unbiased() {
        let v = quad_to_mode(&tmsv_state(0.5));
        let s = BenchSetting::grid(FRAC_PI_4, 0.0);
        let truth = SingleModeCovariance::from_matrix(&output_mode1_covariance(&v, &s))
            .quadrature_variance(FRAC_PI_4);
        let reps: Vec<VarianceEstimate> = (0..100)
            .map(|seed| sample_quadratures(&v, &s, FRAC_PI_4, 2_000, 1.0, seed).unwrap())
            .collect();
        let mean = reps.iter().map(|e| e.variance).sum::<f64>() / 100.0;
        let se = reps[0].stderr / 10.0;
        assert!(
            (mean - truth).abs() < 3.0 * se,
            "{mean} vs {truth} (se {se})"
        );
    }

    #[test]
    fn deterministic_in_seed() {
        let v = quad_to_mode(&tmsv_state(0.2));
        let s = BenchSetting::grid(0.0, 0.0);
        let a = sample_quadratures(&v, &s, 0.0, 1000, 0.9, 17).unwrap();
        assert_eq!(a, sample_quadratures(&v, &s, 0.0, 1000, 0.9, 17).unwrap());
        assert_ne!(a, sample_quadratures(&v, &s, 0.0, 1000, 0.9, 18).unwrap());
    }

    #[test]
    fn too_few_shots() {
        let v = ModeCovariance::vacuum();
        let s = BenchSetting::grid(0.0, 0.0);
        assert!(matches!(
            sample_quadratures(&v, &s, 0.0, 1, 1.0, 0),
            Err(Error::InvalidInput(_))
        ));
    }
}
