use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};

use super::mode::ModeCovariance;
use super::quad::QuadCovariance;
use super::symplectic::omega1;
use crate::{Error, C64};

/// The four local symplectic invariants of a two-mode Gaussian state.
///
/// Stored in the mode-operator convention; the quadrature values are
/// `I1 = 4 J1`, `I2 = 4 J2`, `I3 = 4 J3`, `I4 = 16 J4` and are derived on
/// demand, so the two conventions can never disagree.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "InvariantRecord", try_from = "InvariantRecord")]
pub struct InvariantSet {
    pub j1: f64,
    pub j2: f64,
    pub j3: f64,
    pub j4: f64,
}

impl InvariantSet {
    pub fn new(j1: f64, j2: f64, j3: f64, j4: f64) -> Self {
        Self { j1, j2, j3, j4 }
    }

    pub fn from_quad_convention(i1: f64, i2: f64, i3: f64, i4: f64) -> Self {
        Self::new(i1 / 4.0, i2 / 4.0, i3 / 4.0, i4 / 16.0)
    }

    pub fn vacuum() -> Self {
        Self::new(0.25, 0.25, 0.0, 0.0)
    }

    pub fn i1(&self) -> f64 {
        4.0 * self.j1
    }

    pub fn i2(&self) -> f64 {
        4.0 * self.j2
    }

    pub fn i3(&self) -> f64 {
        4.0 * self.j3
    }

    pub fn i4(&self) -> f64 {
        16.0 * self.j4
    }

    pub fn as_j(&self) -> [f64; 4] {
        [self.j1, self.j2, self.j3, self.j4]
    }

    /// `det γ = I1 I2 + I3² - I4`.
    pub fn det_gamma(&self) -> f64 {
        let i3 = self.i3();
        self.i1() * self.i2() + i3 * i3 - self.i4()
    }

    /// Symplectic eigenvalues `(nu_minus, nu_plus)` of `γ` from the invariants.
    pub fn symplectic_eigenvalues(&self) -> (f64, f64) {
        let delta = self.i1() + self.i2() + 2.0 * self.i3();
        let det = self.det_gamma();
        let disc = (delta * delta - 4.0 * det).max(0.0).sqrt();
        let plus_sq = 0.5 * (delta + disc);
        let minus_sq = if plus_sq > 0.0 { det / plus_sq } else { 0.0 };
        (minus_sq.max(0.0).sqrt(), plus_sq.sqrt())
    }

    /// `|I1 - I2| <= tol · max(I1, I2)`.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        (self.j1 - self.j2).abs() <= tol * self.j1.abs().max(self.j2.abs())
    }
}

/// Wire form carrying both conventions.
#[derive(Serialize, Deserialize)]
struct InvariantRecord {
    j1: f64,
    j2: f64,
    j3: f64,
    j4: f64,
    i1: f64,
    i2: f64,
    i3: f64,
    i4: f64,
}

impl From<InvariantSet> for InvariantRecord {
    fn from(s: InvariantSet) -> Self {
        Self {
            j1: s.j1,
            j2: s.j2,
            j3: s.j3,
            j4: s.j4,
            i1: s.i1(),
            i2: s.i2(),
            i3: s.i3(),
            i4: s.i4(),
        }
    }
}

impl TryFrom<InvariantRecord> for InvariantSet {
    type Error = Error;

    fn try_from(r: InvariantRecord) -> Result<Self, Error> {
        let s = InvariantSet::new(r.j1, r.j2, r.j3, r.j4);
        let pairs = [
            (r.i1, s.i1()),
            (r.i2, s.i2()),
            (r.i3, s.i3()),
            (r.i4, s.i4()),
        ];
        if pairs.iter().any(|(a, b)| a != b) {
            return Err(Error::InvalidInput(
                "I and J invariants violate I1=4J1, I2=4J2, I3=4J3, I4=16J4".into(),
            ));
        }
        Ok(s)
    }
}

/// `I1 = det A`, `I2 = det B`, `I3 = det C`, `I4 = tr(A J C J B J Cᵀ J)`.
pub fn invariants_quad(g: &QuadCovariance) -> InvariantSet {
    let (a, b, c) = (g.a(), g.b(), g.c());
    let j = omega1();
    let i4 = (a * j * c * j * b * j * c.transpose() * j).trace();
    InvariantSet::from_quad_convention(a.determinant(), b.determinant(), c.determinant(), i4)
}

/// `J1 = det V1`, `J2 = det V2`, `J3 = det C_V`, `J4 = tr(V1 Z C_V Z V2 Z C_V† Z)`.
pub fn invariants_mode(v: &ModeCovariance) -> InvariantSet {
    let z = Matrix2::new(1.0, 0.0, 0.0, -1.0).map(C64::from);
    let cv = v.cv();
    let v1 = v.v1().matrix();
    let v2 = v.v2().matrix();
    let j4 = (v1 * z * cv * z * v2 * z * cv.adjoint() * z).trace().re;
    InvariantSet::new(
        v.v1().det(),
        v.v2().det(),
        v.ms.norm_sqr() - v.mc.norm_sqr(),
        j4,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::mode::quad_to_mode;
    use crate::gaussian::states::{random_state, tmsv_state, Purity, Symmetry};
    use crate::gaussian::symplectic::random_local;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    #[test]
    fn vacuum_invariants() {
        let i = invariants_quad(&QuadCovariance::identity());
        assert_eq!([i.i1(), i.i2(), i.i3(), i.i4()], [1.0, 1.0, 0.0, 0.0]);
        assert_eq!(
            invariants_mode(&ModeCovariance::vacuum()),
            InvariantSet::vacuum()
        );
    }

    #[test]
    fn tmsv_closed_form() {
        for r in [0.1f64, 0.5, 1.3] {
            let (c, s) = ((2.0 * r).cosh(), (2.0 * r).sinh());
            let i = invariants_quad(&tmsv_state(r));
            assert!(rel(i.i1(), c * c) < 1e-13);
            assert!(rel(i.i2(), c * c) < 1e-13);
            assert!(rel(i.i3(), -s * s) < 1e-13);
            assert!(rel(i.i4(), 2.0 * c * c * s * s) < 1e-13);
            let j = invariants_mode(&quad_to_mode(&tmsv_state(r)));
            assert!(rel(j.j4, c * c * s * s / 8.0) < 1e-13);
        }
        let i = invariants_quad(&tmsv_state(0.5));
        assert!((i.i1() - 2.38110).abs() < 1e-5);
    }

    #[test]
    fn determinant_identity_and_conventions() {
        for seed in 0..1000 {
            let purity = if seed % 2 == 0 {
                Purity::Pure
            } else {
                Purity::Mixed
            };
            let g = random_state(seed, purity, Symmetry::General);
            let i = invariants_quad(&g);
            assert!(rel(i.det_gamma(), g.det()) < 1e-9, "seed {seed}");
            let j = invariants_mode(&quad_to_mode(&g));
            for (a, b) in i.as_j().iter().zip(j.as_j()) {
                assert!(rel(*a, b) < 1e-10, "seed {seed}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn local_symplectic_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for seed in 0..500 {
            let g = random_state(seed, Purity::Mixed, Symmetry::General);
            let before = invariants_quad(&g);
            let after = invariants_quad(&g.transformed(&random_local(&mut rng, 0.6)));
            let scale = before.j1.max(before.j2);
            for (a, b) in before.as_j().iter().zip(after.as_j()) {
                let denom = b.abs().max(scale * 1e-6);
                assert!((a - b).abs() / denom < 1e-9, "seed {seed}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn eigenvalues_from_invariants_match_matrix() {
        for seed in 0..200 {
            let g = random_state(seed, Purity::Mixed, Symmetry::General);
            let (lo, hi) = invariants_quad(&g).symplectic_eigenvalues();
            let (mlo, mhi) = crate::gaussian::symplectic::symplectic_spectrum(g.matrix()).unwrap();
            assert!((lo - mlo).abs() < 1e-9 && (hi - mhi).abs() < 1e-9);
        }
    }

    #[test]
    fn serde_keeps_both_conventions() {
        let s = InvariantSet::new(0.3, 0.4, -0.1, 0.02);
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.contains("\"i4\":0.32"));
        let back: InvariantSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        let bad = json.replace("\"i1\":1.2", "\"i1\":1.3");
        assert!(serde_json::from_str::<InvariantSet>(&bad).is_err());
    }
}
