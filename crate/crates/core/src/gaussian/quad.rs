use nalgebra::{Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use super::symplectic::symplectic_spectrum;
use super::{PHYSICALITY_TOL, SYMMETRY_TOL};
use crate::{Error, Result};

/// Quadrature covariance matrix `γ` of a zero-mean two-mode Gaussian state.
///
/// Ordering is `(X1, P1, X2, P2)`; the vacuum is the identity. Construction
/// does not check physicality, see [`validate_physical`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadCovariance(Matrix4<f64>);

impl QuadCovariance {
    pub fn new(entries: Matrix4<f64>) -> Self {
        Self(entries)
    }

    pub fn from_rows(rows: [[f64; 4]; 4]) -> Self {
        Self(Matrix4::from_fn(|i, j| rows[i][j]))
    }

    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn rows(&self) -> [[f64; 4]; 4] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.0[(i, j)]))
    }

    /// Local block of mode 1.
    pub fn a(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 0).into_owned()
    }

    /// Local block of mode 2.
    pub fn b(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(2, 2).into_owned()
    }

    /// Correlation block.
    pub fn c(&self) -> Matrix2<f64> {
        self.0.fixed_view::<2, 2>(0, 2).into_owned()
    }

    pub fn det(&self) -> f64 {
        self.0.determinant()
    }

    /// `S γ Sᵀ`.
    pub fn transformed(&self, s: &Matrix4<f64>) -> Self {
        Self(s * self.0 * s.transpose())
    }

    /// Partial transpose with respect to mode 2 (`P2 -> -P2`).
    pub fn partial_transpose(&self) -> Self {
        let flip = Matrix4::from_diagonal(&nalgebra::Vector4::new(1.0, 1.0, 1.0, -1.0));
        self.transformed(&flip)
    }

    /// Single-mode purity `1/sqrt(det A)` of mode 1.
    pub fn purity_mode1(&self) -> f64 {
        1.0 / self.a().determinant().sqrt()
    }

    pub fn ensure_physical(&self) -> Result<PhysicalityReport> {
        let report = validate_physical(self)?;
        if report.physical {
            Ok(report)
        } else {
            Err(Error::Unphysical(report.describe()))
        }
    }
}

/// Outcome of [`validate_physical`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalityReport {
    pub symmetric: bool,
    pub positive_definite: bool,
    /// Symplectic eigenvalues, absent when `γ` is not positive definite.
    pub nu_minus: Option<f64>,
    pub nu_plus: Option<f64>,
    pub physical: bool,
}

impl PhysicalityReport {
    pub fn describe(&self) -> String {
        match (self.nu_minus, self.nu_plus) {
            _ if !self.symmetric => "covariance matrix is not symmetric".to_string(),
            (Some(lo), Some(hi)) if self.physical => {
                format!("physical: symplectic eigenvalues nu- = {lo}, nu+ = {hi}")
            }
            (Some(lo), Some(hi)) => {
                format!("symplectic eigenvalues nu- = {lo}, nu+ = {hi} (need nu >= 1)")
            }
            _ => "covariance matrix is not positive definite".to_string(),
        }
    }
}

/// Checks symmetry, positivity and the uncertainty bound `nu± >= 1`.
pub fn validate_physical(g: &QuadCovariance) -> Result<PhysicalityReport> {
    let m = g.matrix();
    for i in 0..4 {
        for j in 0..4 {
            if !m[(i, j)].is_finite() {
                return Err(Error::NonFinite { row: i, col: j });
            }
        }
    }
    let symmetric = (m - m.transpose()).amax() <= SYMMETRY_TOL;
    let spectrum = if symmetric {
        symplectic_spectrum(m)
    } else {
        None
    };
    let positive_definite = spectrum.is_some();
    let (nu_minus, nu_plus) = match spectrum {
        Some((lo, hi)) => (Some(lo), Some(hi)),
        None => (None, None),
    };
    let physical = symmetric && nu_minus.is_some_and(|lo| lo >= 1.0 - PHYSICALITY_TOL);
    Ok(PhysicalityReport {
        symmetric,
        positive_definite,
        nu_minus,
        nu_plus,
        physical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::symplectic::{beam_splitter, random_local};
    use nalgebra::Vector4;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn vacuum_saturates_bound() {
        let r = validate_physical(&QuadCovariance::identity()).unwrap();
        assert!(r.physical);
        assert!((r.nu_minus.unwrap() - 1.0).abs() < 1e-12);
        assert!((r.nu_plus.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sub_vacuum_is_unphysical() {
        let g = QuadCovariance::new(Matrix4::identity() * 0.5);
        let r = validate_physical(&g).unwrap();
        assert!(!r.physical);
        assert!((r.nu_minus.unwrap() - 0.5).abs() < 1e-12);
        assert!(g.ensure_physical().is_err());
    }

    #[test]
    fn williamson_construction() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = random_local(&mut rng, 0.6) * beam_splitter(1.0) * random_local(&mut rng, 0.6);
        let d = Matrix4::from_diagonal(&Vector4::new(1.3, 1.3, 2.0, 2.0));
        let g = QuadCovariance::new(s * d * s.transpose());
        let r = validate_physical(&g).unwrap();
        assert!(r.physical);
        assert!((r.nu_minus.unwrap() - 1.3).abs() < 1e-9);
        assert!((r.nu_plus.unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn non_finite_is_an_error() {
        let mut m = Matrix4::identity();
        m[(2, 1)] = f64::NAN;
        assert!(matches!(
            validate_physical(&QuadCovariance::new(m)),
            Err(Error::NonFinite { row: 2, col: 1 })
        ));
    }

    #[test]
    fn asymmetric_and_indefinite_fail() {
        let mut m = Matrix4::identity() * 2.0;
        m[(0, 1)] = 0.1;
        assert!(
            !validate_physical(&QuadCovariance::new(m))
                .unwrap()
                .symmetric
        );
        let neg = Matrix4::from_diagonal(&Vector4::new(1.0, 1.0, -1.0, 1.0));
        let r = validate_physical(&QuadCovariance::new(neg)).unwrap();
        assert!(!r.positive_definite && !r.physical);
    }
}
