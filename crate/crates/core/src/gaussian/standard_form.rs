use nalgebra::{Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use super::mode::ModeCovariance;
use crate::{Error, Result, C64};

/// Local symplectic acting on `(a, a†)` of one mode:
///
/// ```text
/// S = | e^{-iα} cosh θ   e^{iβ} sinh θ  |
///     | e^{-iβ} sinh θ   e^{iα} cosh θ  |
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalSymplectic {
    pub alpha: f64,
    pub beta: f64,
    pub theta: f64,
}

impl LocalSymplectic {
    pub fn identity() -> Self {
        Self {
            alpha: 0.0,
            beta: 0.0,
            theta: 0.0,
        }
    }

    pub fn matrix(&self) -> Matrix2<C64> {
        let (ch, sh) = (self.theta.cosh(), self.theta.sinh());
        Matrix2::new(
            C64::from_polar(ch, -self.alpha),
            C64::from_polar(sh, self.beta),
            C64::from_polar(sh, -self.beta),
            C64::from_polar(ch, self.alpha),
        )
    }

    /// Parameters that zero the off-diagonal entry `m` of `[[n, m], [m*, n]]`:
    /// `α = β = (arg m + π)/2` and `tanh 2θ = |m|/n`.
    ///
    /// For `m = 0` no transformation is needed and the identity is returned.
    fn diagonalising(n: f64, m: C64) -> Result<Self> {
        let modulus = m.norm();
        if modulus == 0.0 {
            return Ok(Self::identity());
        }
        if !(modulus < n) {
            return Err(Error::Unphysical(format!(
                "|m| = {modulus} >= n = {n}; local block cannot be diagonalised"
            )));
        }
        let phase = 0.5 * (m.arg() + std::f64::consts::PI);
        Ok(Self {
            alpha: phase,
            beta: phase,
            theta: 0.5 * (modulus / n).atanh(),
        })
    }
}

/// A state brought to the local standard form together with the local
/// transformations used (`Ṽ = S V S†`, `S = S1 ⊕ S2`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StandardForm {
    pub s1: LocalSymplectic,
    pub s2: LocalSymplectic,
    pub state: ModeCovariance,
}

/// Finds local symplectics that zero `m1` and `m2` and applies them.
pub fn standard_form_prep(v: &ModeCovariance) -> Result<StandardForm> {
    let s1 = LocalSymplectic::diagonalising(v.n1, v.m1)?;
    let s2 = LocalSymplectic::diagonalising(v.n2, v.m2)?;
    let mut s = Matrix4::<C64>::zeros();
    s.fixed_view_mut::<2, 2>(0, 0).copy_from(&s1.matrix());
    s.fixed_view_mut::<2, 2>(2, 2).copy_from(&s2.matrix());
    let vt = s * v.matrix() * s.adjoint();
    Ok(StandardForm {
        s1,
        s2,
        state: ModeCovariance::from_matrix(&vt)?,
    })
}

/// Standard forms for which `J1, J2, J3` already fix `J4 = 2|J3|√(J1 J2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpecialForm {
    /// `C_V = diag(ms, ms*)`.
    DiagonalC,
    /// `C_V = adiag(mc, mc*)`.
    AntidiagonalC,
}

/// Classifies a standard-form state. A vanishing `C_V` satisfies both
/// conditions and is reported as [`SpecialForm::DiagonalC`].
pub fn detect_special_form(v: &ModeCovariance, tol: f64) -> Result<Option<SpecialForm>> {
    if v.m1.norm() > tol * v.n1 || v.m2.norm() > tol * v.n2 {
        return Err(Error::Precondition(format!(
            "state not in standard form (|m1| = {}, |m2| = {})",
            v.m1.norm(),
            v.m2.norm()
        )));
    }
    let (ms, mc) = (v.ms.norm(), v.mc.norm());
    let scale = ms + mc;
    Ok(if mc <= tol * scale {
        Some(SpecialForm::DiagonalC)
    } else if ms <= tol * scale {
        Some(SpecialForm::AntidiagonalC)
    } else {
        None
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::invariants::invariants_mode;
    use crate::gaussian::mode::quad_to_mode;
    use crate::gaussian::states::{random_state, thermal_state, tmsv_state, Purity, Symmetry};
    use proptest::prelude::*;

    #[test]
    fn diagonal_blocks_are_left_alone() {
        let v = quad_to_mode(&tmsv_state(0.4));
        let sf = standard_form_prep(&v).unwrap();
        assert_eq!(sf.s1, LocalSymplectic::identity());
        assert_eq!(sf.s2, LocalSymplectic::identity());
        assert_eq!(sf.state, v);
    }

    #[test]
    fn real_m_gives_quarter_turn() {
        let mut v = ModeCovariance::vacuum();
        v.n1 = 2.0;
        v.m1 = C64::new(0.6, 0.0);
        let sf = standard_form_prep(&v).unwrap();
        let half_pi = std::f64::consts::FRAC_PI_2;
        assert!((sf.s1.alpha - half_pi).abs() < 1e-15);
        assert!((sf.s1.beta - half_pi).abs() < 1e-15);
        assert!(((2.0 * sf.s1.theta).tanh() - 0.3).abs() < 1e-15);
        assert!(sf.state.m1.norm() < 1e-12);
    }

    #[test]
    fn local_symplectic_has_unit_determinant() {
        let s = LocalSymplectic {
            alpha: 0.3,
            beta: -1.2,
            theta: 0.7,
        };
        assert!((s.matrix().determinant() - C64::from(1.0)).norm() < 1e-14);
    }

    #[test]
    fn unphysical_block_is_rejected() {
        let mut v = ModeCovariance::vacuum();
        v.m2 = C64::new(0.0, 0.6);
        assert!(matches!(standard_form_prep(&v), Err(Error::Unphysical(_))));
    }

    #[test]
    fn special_form_detection() {
        let tmsv = quad_to_mode(&tmsv_state(0.5));
        assert_eq!(
            detect_special_form(&tmsv, 1e-9).unwrap(),
            Some(SpecialForm::AntidiagonalC)
        );
        let product = quad_to_mode(&thermal_state(1.5, 2.5));
        assert_eq!(
            detect_special_form(&product, 1e-9).unwrap(),
            Some(SpecialForm::DiagonalC)
        );
        let mut v = product;
        v.ms = C64::new(0.1, 0.0);
        v.mc = C64::new(0.1, 0.0);
        assert_eq!(detect_special_form(&v, 1e-9).unwrap(), None);
        v.m1 = C64::new(0.2, 0.0);
        assert!(matches!(
            detect_special_form(&v, 1e-9),
            Err(Error::Precondition(_))
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn prep_zeroes_local_offdiagonals(seed in any::<u64>(), mixed in any::<bool>()) {
            let purity = if mixed { Purity::Mixed } else { Purity::Pure };
            let v = quad_to_mode(&random_state(seed, purity, Symmetry::General));
            let sf = standard_form_prep(&v).unwrap();
            prop_assert!(sf.state.m1.norm() < 1e-10 && sf.state.m2.norm() < 1e-10);
            let (a, b) = (invariants_mode(&v), invariants_mode(&sf.state));
            let scale = a.j1.max(a.j2);
            for (x, y) in a.as_j().iter().zip(b.as_j()) {
                prop_assert!((x - y).abs() / y.abs().max(1e-6 * scale) < 1e-9);
            }
            prop_assert!(sf.state.validate().is_ok());
        }
    }
}
