use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Beam-splitter angle `theta` (transmittance `cos theta`) and phase `phi`
/// applied to mode 1 before the beam splitter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BenchSetting {
    pub theta: f64,
    pub phi: f64,
}

impl BenchSetting {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2).contains(&theta) {
            return Err(Error::InvalidInput(format!(
                "theta = {theta} outside [0, pi/2]"
            )));
        }
        if !(phi > -PI && phi <= PI) {
            return Err(Error::InvalidInput(format!(
                "phi = {phi} outside (-pi, pi]"
            )));
        }
        Ok(Self { theta, phi })
    }

    pub const fn grid(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    /// `(cos theta, sin theta)`, exact on the grid values `0, pi/4, pi/2`.
    pub fn transmission(&self) -> (f64, f64) {
        exact_cos_sin(self.theta)
    }

    /// `(cos² theta, sin² theta, cos theta sin theta)`, exact on the grid.
    pub fn transmission_products(&self) -> (f64, f64, f64) {
        if self.theta == FRAC_PI_4 {
            return (0.5, 0.5, 0.5);
        }
        let (c, s) = self.transmission();
        (c * c, s * s, c * s)
    }

    /// `e^{i phi}` as `(cos phi, sin phi)`, exact on `0, ±pi/2, pi`.
    pub fn phase(&self) -> (f64, f64) {
        exact_cos_sin(self.phi)
    }

    /// Transmittance `T = cos theta`.
    pub fn transmittance(&self) -> f64 {
        self.transmission().0
    }
}

fn exact_cos_sin(angle: f64) -> (f64, f64) {
    match angle {
        0.0 => (1.0, 0.0),
        a if a == FRAC_PI_4 => (FRAC_1_SQRT_2, FRAC_1_SQRT_2),
        a if a == FRAC_PI_2 => (0.0, 1.0),
        a if a == -FRAC_PI_2 => (0.0, -1.0),
        a if a == PI => (-1.0, 0.0),
        a => (a.cos(), a.sin()),
    }
}
