use nalgebra::{Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use super::quad::QuadCovariance;
use super::{PHYSICALITY_TOL, SYMMETRY_TOL};
use crate::{Error, Result, C64};

/// Mode-operator covariance matrix `V` of `(a1, a1†, a2, a2†)`.
///
/// ```text
///     | n1   m1   ms   mc  |
/// V = | m1*  n1   mc*  ms* |
///     | ms*  mc   n2   m2  |
///     | mc*  ms   m2*  n2  |
/// ```
///
/// `n_j = <a_j† a_j> + 1/2`, `m_j = -<a_j²>`, `ms = <a1 a2†>`, `mc = -<a1 a2>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeCovariance {
    pub n1: f64,
    pub n2: f64,
    #[serde(with = "complex_pair")]
    pub m1: C64,
    #[serde(with = "complex_pair")]
    pub m2: C64,
    #[serde(with = "complex_pair")]
    pub ms: C64,
    #[serde(with = "complex_pair")]
    pub mc: C64,
}

impl ModeCovariance {
    pub fn vacuum() -> Self {
        let zero = C64::new(0.0, 0.0);
        Self {
            n1: 0.5,
            n2: 0.5,
            m1: zero,
            m2: zero,
            ms: zero,
            mc: zero,
        }
    }

    pub fn matrix(&self) -> Matrix4<C64> {
        let n1 = C64::from(self.n1);
        let n2 = C64::from(self.n2);
        let (m1, m2, ms, mc) = (self.m1, self.m2, self.ms, self.mc);
        Matrix4::new(
            n1,
            m1,
            ms,
            mc,
            m1.conj(),
            n1,
            mc.conj(),
            ms.conj(),
            ms.conj(),
            mc,
            n2,
            m2,
            mc.conj(),
            ms,
            m2.conj(),
            n2,
        )
    }

    /// Reads the parameters back from a full matrix, averaging the redundant
    /// entries. Fails when the matrix departs from the required structure.
    pub fn from_matrix(v: &Matrix4<C64>) -> Result<Self> {
        let scale = v.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let tol = 1e-9 * scale;
        let pair = |a: C64, b: C64| -> Result<C64> {
            if (a - b).norm() > tol {
                return Err(Error::Precondition(format!(
                    "matrix lacks the two-mode Bogoliubov structure ({a} vs {b})"
                )));
            }
            Ok((a + b) * 0.5)
        };
        let n1 = pair(v[(0, 0)], v[(1, 1)])?;
        let n2 = pair(v[(2, 2)], v[(3, 3)])?;
        if n1.im.abs() > tol || n2.im.abs() > tol {
            return Err(Error::Precondition("diagonal must be real".into()));
        }
        Ok(Self {
            n1: n1.re,
            n2: n2.re,
            m1: pair(v[(0, 1)], v[(1, 0)].conj())?,
            m2: pair(v[(2, 3)], v[(3, 2)].conj())?,
            ms: pair(v[(0, 2)], v[(1, 3)].conj())?,
            mc: pair(v[(0, 3)], v[(1, 2)].conj())?,
        })
    }

    pub fn v1(&self) -> SingleModeCovariance {
        SingleModeCovariance::new(self.n1, self.m1)
    }

    pub fn v2(&self) -> SingleModeCovariance {
        SingleModeCovariance::new(self.n2, self.m2)
    }

    /// Correlation block `C_V`.
    pub fn cv(&self) -> Matrix2<C64> {
        Matrix2::new(self.ms, self.mc, self.mc.conj(), self.ms.conj())
    }

    /// Checks `det V_j >= 1/4` for both modes and full two-mode physicality.
    pub fn validate(&self) -> Result<()> {
        for (j, block) in [(1, self.v1()), (2, self.v2())] {
            if !(block.n.is_finite() && block.m.re.is_finite() && block.m.im.is_finite()) {
                return Err(Error::InvalidInput(format!("non-finite entry in mode {j}")));
            }
            if block.det() < 0.25 - PHYSICALITY_TOL {
                return Err(Error::Unphysical(format!(
                    "mode {j}: det V{j} = {} < 1/4",
                    block.det()
                )));
            }
        }
        mode_to_quad(self).ensure_physical().map(|_| ())
    }

    pub fn is_hermitian(&self) -> bool {
        let v = self.matrix();
        (v - v.adjoint()).iter().all(|z| z.norm() <= SYMMETRY_TOL)
    }
}

/// 2x2 Hermitian covariance `[[n, m], [m*, n]]` of a single mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingleModeCovariance {
    pub n: f64,
    #[serde(with = "complex_pair")]
    pub m: C64,
}

impl SingleModeCovariance {
    pub fn new(n: f64, m: C64) -> Self {
        Self { n, m }
    }

    pub fn vacuum() -> Self {
        Self::new(0.5, C64::new(0.0, 0.0))
    }

    pub fn matrix(&self) -> Matrix2<C64> {
        Matrix2::new(C64::from(self.n), self.m, self.m.conj(), C64::from(self.n))
    }

    /// Reads `n` and `m` from a 2x2 block produced by a Bogoliubov
    /// transformation (redundant entries averaged).
    pub fn from_matrix(v: &Matrix2<C64>) -> Self {
        Self {
            n: 0.5 * (v[(0, 0)].re + v[(1, 1)].re),
            m: (v[(0, 1)] + v[(1, 0)].conj()) * 0.5,
        }
    }

    /// `n² - |m|²`.
    pub fn det(&self) -> f64 {
        self.n * self.n - self.m.norm_sqr()
    }

    /// Mean photon number plus one half.
    pub fn photon_number(&self) -> f64 {
        self.n
    }

    /// Variance of the photon number `a†a` for a zero-mean Gaussian state.
    pub fn photon_number_variance(&self) -> f64 {
        self.n * self.n + self.m.norm_sqr() - 0.25
    }

    /// Real quadrature covariance of the mode (vacuum = identity).
    pub fn to_quad(&self) -> Matrix2<f64> {
        let g11 = 2.0 * (self.n - self.m.re);
        let g22 = 2.0 * (self.n + self.m.re);
        let g12 = -2.0 * self.m.im;
        Matrix2::new(g11, g12, g12, g22)
    }

    pub fn from_quad(g: &Matrix2<f64>) -> Self {
        let g12 = 0.5 * (g[(0, 1)] + g[(1, 0)]);
        Self {
            n: 0.25 * (g[(0, 0)] + g[(1, 1)]),
            m: C64::new(-0.25 * (g[(0, 0)] - g[(1, 1)]), -0.5 * g12),
        }
    }

    /// Variance of `X cos(angle) + P sin(angle)` in quadrature units.
    pub fn quadrature_variance(&self, angle: f64) -> f64 {
        let g = self.to_quad();
        let (s, c) = angle.sin_cos();
        c * c * g[(0, 0)] + s * s * g[(1, 1)] + 2.0 * s * c * g[(0, 1)]
    }
}

/// Quadrature covariance -> mode covariance (zero means).
pub fn quad_to_mode(g: &QuadCovariance) -> ModeCovariance {
    let m = g.matrix();
    let e = |i: usize, j: usize| 0.5 * (m[(i - 1, j - 1)] + m[(j - 1, i - 1)]);
    let v1 = SingleModeCovariance::from_quad(&g.a());
    let v2 = SingleModeCovariance::from_quad(&g.b());
    ModeCovariance {
        n1: v1.n,
        n2: v2.n,
        m1: v1.m,
        m2: v2.m,
        ms: C64::new(e(1, 3) + e(2, 4), e(2, 3) - e(1, 4)) * 0.25,
        mc: C64::new(e(1, 3) - e(2, 4), e(1, 4) + e(2, 3)) * -0.25,
    }
}

/// Mode covariance -> quadrature covariance; inverse of [`quad_to_mode`].
pub fn mode_to_quad(v: &ModeCovariance) -> QuadCovariance {
    let a = v.v1().to_quad();
    let b = v.v2().to_quad();
    let (ms, mc) = (v.ms, v.mc);
    let g13 = 2.0 * (ms.re - mc.re);
    let g24 = 2.0 * (ms.re + mc.re);
    let g23 = 2.0 * (ms.im - mc.im);
    let g14 = -2.0 * (ms.im + mc.im);
    QuadCovariance::from_rows([
        [a[(0, 0)], a[(0, 1)], g13, g14],
        [a[(1, 0)], a[(1, 1)], g23, g24],
        [g13, g23, b[(0, 0)], b[(0, 1)]],
        [g14, g24, b[(1, 0)], b[(1, 1)]],
    ])
}

/// Serialises a complex number as `[re, im]`.
pub(crate) mod complex_pair {
    use crate::C64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &C64, s: S) -> Result<S::Ok, S::Error> {
        [z.re, z.im].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<C64, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(d)?;
        Ok(C64::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::states::{random_state, tmsv_state, Purity, Symmetry};
    use proptest::prelude::*;

    /// `V = ½ K γ K†` with `K = diag(1,-1,1,-1)·(M ⊕ M)`, `M = [[1, i], [1, -i]]/√2`.
    fn mode_matrix_oracle(g: &QuadCovariance) -> Matrix4<C64> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let one = C64::new(h, 0.0);
        let i = C64::new(0.0, h);
        let zero = C64::new(0.0, 0.0);
        let m = Matrix4::new(
            one, i, zero, zero, one, -i, zero, zero, zero, zero, one, i, zero, zero, one, -i,
        );
        let d =
            Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, -1.0, 1.0, -1.0)).map(C64::from);
        let k = d * m;
        let gc = g.matrix().map(C64::from);
        k * gc * k.adjoint() * C64::from(0.5)
    }

    #[test]
    fn vacuum_maps_to_half() {
        let v = quad_to_mode(&QuadCovariance::identity());
        assert_eq!(v, ModeCovariance::vacuum());
        assert_eq!(
            mode_to_quad(&ModeCovariance::vacuum()),
            QuadCovariance::identity()
        );
    }

    #[test]
    fn tmsv_mode_entries() {
        let r: f64 = 0.5;
        let v = quad_to_mode(&tmsv_state(r));
        let c = (2.0 * r).cosh() / 2.0;
        assert!((v.n1 - c).abs() < 1e-14 && (v.n2 - c).abs() < 1e-14);
        assert!(v.m1.norm() < 1e-14 && v.m2.norm() < 1e-14 && v.ms.norm() < 1e-14);
        assert!((v.mc.norm() - (2.0 * r).sinh() / 2.0).abs() < 1e-14);
        let j3 = v.ms.norm_sqr() - v.mc.norm_sqr();
        assert!((j3 + (2.0 * r).sinh().powi(2) / 4.0).abs() < 1e-14);
    }

    #[test]
    fn entries_match_matrix_definition() {
        for seed in 0..50 {
            let g = random_state(seed, Purity::Mixed, Symmetry::General);
            let v = quad_to_mode(&g).matrix();
            let oracle = mode_matrix_oracle(&g);
            assert!((v - oracle).iter().all(|z| z.norm() < 1e-12), "seed {seed}");
        }
    }

    #[test]
    fn single_mode_quadrature_roundtrip() {
        let b = SingleModeCovariance::new(1.7, C64::new(0.3, -0.4));
        let back = SingleModeCovariance::from_quad(&b.to_quad());
        assert!((back.n - b.n).abs() < 1e-15 && (back.m - b.m).norm() < 1e-15);
        assert!((b.to_quad().determinant() - 4.0 * b.det()).abs() < 1e-12);
        assert!((b.quadrature_variance(0.0) - b.to_quad()[(0, 0)]).abs() < 1e-15);
    }

    #[test]
    fn from_matrix_rejects_broken_structure() {
        let mut m = ModeCovariance::vacuum().matrix();
        m[(0, 1)] = C64::new(0.2, 0.0);
        assert!(ModeCovariance::from_matrix(&m).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn quad_mode_roundtrip(seed in any::<u64>(), mixed in any::<bool>(), sym in any::<bool>()) {
            let purity = if mixed { Purity::Mixed } else { Purity::Pure };
            let symmetry = if sym { Symmetry::Symmetric } else { Symmetry::General };
            let g = random_state(seed, purity, symmetry);
            let v = quad_to_mode(&g);
            prop_assert!(v.is_hermitian());
            let back = mode_to_quad(&v);
            prop_assert!((back.matrix() - g.matrix()).amax() < 1e-12);
        }
    }
}
