//! Detector loss: a beam splitter of transmittance `eta` in front of an ideal
//! detector, admixing vacuum into the measured mode.

use serde::{Deserialize, Serialize};

use crate::gaussian::SingleModeCovariance;
use crate::{Error, Result};

pub(crate) fn check_efficiency(eta: f64) -> Result<()> {
    if eta > 0.0 && eta <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "efficiency eta = {eta} outside (0, 1]"
        )))
    }
}

/// `V -> eta V + (1 - eta)/2 · 1` (mode convention).
pub fn apply_loss(block: &SingleModeCovariance, eta: f64) -> Result<SingleModeCovariance> {
    check_efficiency(eta)?;
    Ok(SingleModeCovariance::new(
        eta * block.n + 0.5 * (1.0 - eta),
        block.m * eta,
    ))
}

/// Inverse of [`apply_loss`].
pub fn remove_loss(block: &SingleModeCovariance, eta: f64) -> Result<SingleModeCovariance> {
    check_efficiency(eta)?;
    Ok(SingleModeCovariance::new(
        (block.n - 0.5 * (1.0 - eta)) / eta,
        block.m / eta,
    ))
}

/// Loss-corrected homodyne variances and the observables derived from them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HomodyneCorrection {
    pub v_min: f64,
    pub v_max: f64,
    /// `V_min V_max / 4`.
    pub j_prime: f64,
    /// `(V_min + V_max) / 4`: mean photon number plus one half when the
    /// vacuum variance is 1.
    pub n_prime: f64,
}

/// Corrects measured squeezed/anti-squeezed quadrature variances
/// (vacuum = 1) with `V = (V_meas - 1 + eta) / eta`.
pub fn invert_loss_homodyne(
    v_min_meas: f64,
    v_max_meas: f64,
    eta_hom: f64,
) -> Result<HomodyneCorrection> {
    check_efficiency(eta_hom)?;
    let floor = 1.0 - eta_hom;
    for v in [v_min_meas, v_max_meas] {
        if !(v >= floor) {
            return Err(Error::UnphysicalMeasurement(format!(
                "measured variance {v} below the loss floor {floor}"
            )));
        }
    }
    let correct = |v: f64| (v - 1.0 + eta_hom) / eta_hom;
    let (v_min, v_max) = (correct(v_min_meas), correct(v_max_meas));
    Ok(HomodyneCorrection {
        v_min,
        v_max,
        j_prime: v_min * v_max / 4.0,
        n_prime: (v_min + v_max) / 4.0,
    })
}

/// Recovers `(N', J')` from photon-number and purity data taken through a
/// lossy detector. With `W = eta V + (1-eta)/2`:
/// `N_meas = eta N + (1-eta)/2` and
/// `J_meas = eta² J + eta(1-eta) N + (1-eta)²/4`.
pub fn invert_loss_photocount(n_meas: f64, j_meas: f64, eta: f64) -> Result<(f64, f64)> {
    check_efficiency(eta)?;
    let loss = 1.0 - eta;
    let n = (n_meas - 0.5 * loss) / eta;
    let j = (j_meas - eta * loss * n - 0.25 * loss * loss) / (eta * eta);
    Ok((n, j))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransmittanceRescale {
    pub theta_physical: f64,
    /// Set when `cos(theta_target)/eta > 1`: no physical beam splitter
    /// compensates the loss.
    pub unreachable: bool,
}

/// Beam-splitter angle whose transmittance, multiplied by `eta`, equals the
/// target transmittance: `cos theta_phys = min(1, cos theta_target / eta)`.
pub fn rescale_transmittance(theta_target: f64, eta: f64) -> Result<TransmittanceRescale> {
    check_efficiency(eta)?;
    if eta == 1.0 || theta_target == std::f64::consts::FRAC_PI_2 {
        return Ok(TransmittanceRescale {
            theta_physical: theta_target,
            unreachable: false,
        });
    }
    let wanted = theta_target.cos() / eta;
    Ok(TransmittanceRescale {
        theta_physical: wanted.min(1.0).acos(),
        unreachable: wanted > 1.0,
    })
}
