//! Real symplectic building blocks in the `(X1, P1, X2, P2)` ordering.

use nalgebra::{Matrix2, Matrix4, SymmetricEigen};
use rand::Rng;

/// Single-mode symplectic form `[[0, 1], [-1, 0]]`.
pub fn omega1() -> Matrix2<f64> {
    Matrix2::new(0.0, 1.0, -1.0, 0.0)
}

/// Two-mode symplectic form, block-diagonal in [`omega1`].
pub fn omega() -> Matrix4<f64> {
    local(&omega1(), &omega1())
}

/// Phase-space rotation by `angle`.
pub fn rotation(angle: f64) -> Matrix2<f64> {
    let (s, c) = angle.sin_cos();
    Matrix2::new(c, s, -s, c)
}

/// Single-mode squeezer: `X` scaled by `e^{-r}`, `P` by `e^{r}`.
pub fn squeezer(r: f64) -> Matrix2<f64> {
    Matrix2::new((-r).exp(), 0.0, 0.0, r.exp())
}

/// Block-diagonal (local) two-mode symplectic `s1 ⊕ s2`.
pub fn local(s1: &Matrix2<f64>, s2: &Matrix2<f64>) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(s1);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(s2);
    m
}

/// Beam splitter with amplitude transmittance `cos(angle)`.
pub fn beam_splitter(angle: f64) -> Matrix4<f64> {
    let (s, c) = angle.sin_cos();
    let id = Matrix2::identity();
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(&(id * c));
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(&(id * s));
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(&(id * -s));
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(&(id * c));
    m
}

/// Two-mode squeezer with squeezing parameter `r`.
pub fn two_mode_squeezer(r: f64) -> Matrix4<f64> {
    let (ch, sh) = (r.cosh(), r.sinh());
    let z = Matrix2::new(1.0, 0.0, 0.0, -1.0);
    let mut m = Matrix4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0)
        .copy_from(&(Matrix2::identity() * ch));
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(&(z * sh));
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(&(z * sh));
    m.fixed_view_mut::<2, 2>(2, 2)
        .copy_from(&(Matrix2::identity() * ch));
    m
}

/// Random single-mode symplectic `R(a) S(r) R(b)` with `|r| <= max_squeeze`.
pub fn random_single_mode<R: Rng + ?Sized>(rng: &mut R, max_squeeze: f64) -> Matrix2<f64> {
    let a = rng.random_range(0.0..std::f64::consts::TAU);
    let b = rng.random_range(0.0..std::f64::consts::TAU);
    let r = rng.random_range(-max_squeeze..=max_squeeze);
    rotation(a) * squeezer(r) * rotation(b)
}

/// Random local two-mode symplectic.
pub fn random_local<R: Rng + ?Sized>(rng: &mut R, max_squeeze: f64) -> Matrix4<f64> {
    let s1 = random_single_mode(rng, max_squeeze);
    let s2 = random_single_mode(rng, max_squeeze);
    local(&s1, &s2)
}

/// Symplectic eigenvalues `(nu_minus, nu_plus)` of a positive-definite
/// real symmetric 4x4 matrix, from the explicit matrix.
///
/// The eigenvalues of `i Ω γ` are `±nu_k`; equivalently `nu_k^2` are the
/// (doubly degenerate) eigenvalues of the symmetric matrix
/// `γ^{1/2} Ωᵀ γ Ω γ^{1/2}`. Returns `None` when `γ` is not positive definite.
pub fn symplectic_spectrum(gamma: &Matrix4<f64>) -> Option<(f64, f64)> {
    let sym = (gamma + gamma.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    if eig.eigenvalues.iter().any(|&l| l <= 0.0) {
        return None;
    }
    let sqrt_diag = Matrix4::from_diagonal(&eig.eigenvalues.map(f64::sqrt));
    let root = eig.eigenvectors * sqrt_diag * eig.eigenvectors.transpose();
    let om = omega();
    let m = root * om.transpose() * sym * om * root;
    let m = (m + m.transpose()) * 0.5;
    let mut sq: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    sq.sort_by(f64::total_cmp);
    let lo = (0.5 * (sq[0] + sq[1])).max(0.0).sqrt();
    let hi = (0.5 * (sq[2] + sq[3])).max(0.0).sqrt();
    Some((lo, hi))
}
