//! State generators.
//!
//! Random states use the Williamson construction `γ = S diag(ν1,ν1,ν2,ν2) Sᵀ`
//! with `ν_k >= 1`, so physicality holds by construction and the symplectic
//! spectrum is known exactly.

use nalgebra::{Matrix4, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::quad::QuadCovariance;
use super::standard_form::SpecialForm;
use super::symplectic::{
    beam_splitter, local, random_local, random_single_mode, rotation, squeezer, two_mode_squeezer,
};

const MAX_SQUEEZE: f64 = 0.6;
const MAX_THERMAL: f64 = 2.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Purity {
    Pure,
    Mixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Symmetric,
    General,
}

pub fn vacuum_state() -> QuadCovariance {
    QuadCovariance::identity()
}

/// Product of thermal states with symplectic eigenvalues `nu1`, `nu2`.
pub fn thermal_state(nu1: f64, nu2: f64) -> QuadCovariance {
    QuadCovariance::new(Matrix4::from_diagonal(&Vector4::new(nu1, nu1, nu2, nu2)))
}

/// Two-mode squeezed vacuum: `A = B = cosh 2r · 1`, `C = sinh 2r · diag(1, -1)`.
pub fn tmsv_state(r: f64) -> QuadCovariance {
    let (c, s) = ((2.0 * r).cosh(), (2.0 * r).sinh());
    QuadCovariance::from_rows([
        [c, 0.0, s, 0.0],
        [0.0, c, 0.0, -s],
        [s, 0.0, c, 0.0],
        [0.0, -s, 0.0, c],
    ])
}

fn williamson(s: &Matrix4<f64>, nu1: f64, nu2: f64) -> QuadCovariance {
    let g = s * Matrix4::from_diagonal(&Vector4::new(nu1, nu1, nu2, nu2)) * s.transpose();
    QuadCovariance::new((g + g.transpose()) * 0.5)
}

fn thermal_numbers(rng: &mut ChaCha8Rng, purity: Purity) -> (f64, f64) {
    match purity {
        Purity::Pure => (1.0, 1.0),
        Purity::Mixed => (
            rng.random_range(1.0..MAX_THERMAL),
            rng.random_range(1.0..MAX_THERMAL),
        ),
    }
}

/// Deterministic random physical state.
///
/// General states use `S = L · BS · L · BS · L` with random local
/// symplectics `L` and beam splitters. Pure symmetric states squeeze two
/// vacua, mix them on a balanced beam splitter (which makes both local
/// blocks identical) and finish with a random local symplectic. Mixed
/// symmetric states start from a random symmetric standard form instead, so
/// they are not just rescaled pure states. Local symplectics keep
/// `I1 = I2` intact.
pub fn random_state(seed: u64, purity: Purity, symmetry: Symmetry) -> QuadCovariance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match symmetry {
        Symmetry::General => {
            let (nu1, nu2) = thermal_numbers(&mut rng, purity);
            let t1 = rng.random_range(0.0..std::f64::consts::PI);
            let t2 = rng.random_range(0.0..std::f64::consts::PI);
            let s = random_local(&mut rng, MAX_SQUEEZE)
                * beam_splitter(t1)
                * random_local(&mut rng, MAX_SQUEEZE)
                * beam_splitter(t2)
                * random_local(&mut rng, MAX_SQUEEZE);
            williamson(&s, nu1, nu2)
        }
        Symmetry::Symmetric if purity == Purity::Mixed => {
            let core = symmetric_standard_form(&mut rng);
            core.transformed(&random_local(&mut rng, MAX_SQUEEZE))
        }
        Symmetry::Symmetric => {
            let core = local(
                &(rotation(rng.random_range(0.0..std::f64::consts::TAU))
                    * squeezer(rng.random_range(-2.0 * MAX_SQUEEZE..=2.0 * MAX_SQUEEZE))),
                &(rotation(rng.random_range(0.0..std::f64::consts::TAU))
                    * squeezer(rng.random_range(-2.0 * MAX_SQUEEZE..=2.0 * MAX_SQUEEZE))),
            );
            let s = random_local(&mut rng, MAX_SQUEEZE)
                * beam_splitter(std::f64::consts::FRAC_PI_4)
                * core;
            williamson(&s, 1.0, 1.0)
        }
    }
}

/// Rejection-samples a mixed symmetric standard form
/// `[[a,0,c1,0],[0,a,0,c2],[c1,0,a,0],[0,c2,0,a]]`. Its symplectic
/// eigenvalues are `sqrt((a ± c1)(a ± c2))`; both must be at least 1.
fn symmetric_standard_form(rng: &mut ChaCha8Rng) -> QuadCovariance {
    loop {
        let a: f64 = rng.random_range(1.0..MAX_THERMAL + 0.5);
        let c1 = rng.random_range(-a..a);
        let c2 = rng.random_range(-a..a);
        let nu_sq = [(a + c1) * (a + c2), (a - c1) * (a - c2)];
        if nu_sq.iter().all(|&x| x > 1.0 + 1e-6) {
            return QuadCovariance::from_rows([
                [a, 0.0, c1, 0.0],
                [0.0, a, 0.0, c2],
                [c1, 0.0, a, 0.0],
                [0.0, c2, 0.0, a],
            ]);
        }
    }
}

/// Random state that can be brought locally to a special standard form.
///
/// Anti-diagonal `C_V`: two-mode squeezed thermal (or vacuum) states.
/// Diagonal `C_V`: two unequal thermal modes mixed on a beam splitter.
/// Both are then disguised by a random local symplectic.
pub fn special_form_state(seed: u64, form: SpecialForm) -> QuadCovariance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let core = match form {
        SpecialForm::AntidiagonalC => {
            let purity = if rng.random_bool(0.5) {
                Purity::Pure
            } else {
                Purity::Mixed
            };
            let (nu1, nu2) = thermal_numbers(&mut rng, purity);
            let r = rng.random_range(0.1..1.0);
            williamson(&two_mode_squeezer(r), nu1, nu2)
        }
        SpecialForm::DiagonalC => {
            let nu1 = rng.random_range(1.0..MAX_THERMAL);
            let nu2 = nu1 + rng.random_range(0.2..MAX_THERMAL);
            let t = rng.random_range(0.1..std::f64::consts::FRAC_PI_2 - 0.1);
            williamson(&beam_splitter(t), nu1, nu2)
        }
    };
    let disguise = local(
        &random_single_mode(&mut rng, MAX_SQUEEZE),
        &random_single_mode(&mut rng, MAX_SQUEEZE),
    );
    core.transformed(&disguise)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::invariants::invariants_quad;
    use crate::gaussian::quad::validate_physical;

    #[test]
    fn tmsv_basics() {
        assert_eq!(tmsv_state(0.0), vacuum_state());
        for r in [0.1, 0.5, 1.0, 2.0] {
            assert!(
                (tmsv_state(r).det() - 1.0).abs() < 1e-9 * tmsv_state(r).matrix().amax().powi(4)
            );
            assert!(validate_physical(&tmsv_state(r)).unwrap().physical);
        }
        assert!((invariants_quad(&tmsv_state(0.5)).i1() - 1f64.cosh().powi(2)).abs() < 1e-12);
    }

    #[test]
    fn pure_class_has_unit_determinant() {
        for seed in 0..200 {
            for sym in [Symmetry::General, Symmetry::Symmetric] {
                let g = random_state(seed, Purity::Pure, sym);
                assert!((g.det() - 1.0).abs() < 1e-9, "seed {seed}: {}", g.det());
            }
        }
    }

    #[test]
    fn symmetric_class_has_equal_local_determinants() {
        for seed in 0..200 {
            let i = invariants_quad(&random_state(seed, Purity::Mixed, Symmetry::Symmetric));
            assert!((i.i1() - i.i2()).abs() / i.i1() < 1e-9, "seed {seed}");
        }
    }

    #[test]
    fn generators_are_deterministic_and_physical() {
        for seed in 0..100 {
            let a = random_state(seed, Purity::Mixed, Symmetry::General);
            assert_eq!(a, random_state(seed, Purity::Mixed, Symmetry::General));
            assert!(validate_physical(&a).unwrap().physical);
            for form in [SpecialForm::DiagonalC, SpecialForm::AntidiagonalC] {
                assert!(
                    validate_physical(&special_form_state(seed, form))
                        .unwrap()
                        .physical
                );
            }
        }
        assert_ne!(
            random_state(1, Purity::Mixed, Symmetry::General),
            random_state(2, Purity::Mixed, Symmetry::General)
        );
    }
}
