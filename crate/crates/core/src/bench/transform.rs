use nalgebra::{Matrix2, Matrix4};

use super::setting::BenchSetting;
use crate::gaussian::ModeCovariance;
use crate::C64;

/// Blocks `R = diag(e^{iφ} cos θ, e^{-iφ} cos θ)` and `S = diag(sin θ, sin θ)`.
fn blocks(setting: &BenchSetting) -> (Matrix2<C64>, Matrix2<C64>) {
    let (c, s) = setting.transmission();
    let (pc, ps) = setting.phase();
    let e = C64::new(pc, ps);
    let r = Matrix2::new(e * c, C64::from(0.0), C64::from(0.0), e.conj() * c);
    let sm = Matrix2::<C64>::identity() * C64::from(s);
    (r, sm)
}

/// Bogoliubov matrix `U = [[R, S], [-S*, R*]]` of the phase shifter and
/// beam splitter.
pub fn bogoliubov(setting: &BenchSetting) -> Matrix4<C64> {
    let (r, s) = blocks(setting);
    let mut u = Matrix4::zeros();
    u.fixed_view_mut::<2, 2>(0, 0).copy_from(&r);
    u.fixed_view_mut::<2, 2>(0, 2).copy_from(&s);
    u.fixed_view_mut::<2, 2>(2, 0).copy_from(&(-s.conjugate()));
    u.fixed_view_mut::<2, 2>(2, 2).copy_from(&r.conjugate());
    u
}

/// Full output covariance `U† V U`.
pub fn output_covariance(v: &ModeCovariance, setting: &BenchSetting) -> Matrix4<C64> {
    let u = bogoliubov(setting);
    u.adjoint() * v.matrix() * u
}

/// Local covariance of output mode 1:
/// `V'1 = R* V1 R + S V2 S* - S C_V† R - R* C_V S*`.
///
/// Evaluated as `cos²θ (P* V1 P) + sin²θ V2 - cosθ sinθ (C_V† P + P* C_V)`
/// with `P = diag(e^{iφ}, e^{-iφ})`, so the grid angles use exact products
/// (`cos² π/4 = 1/2` rather than `(1/√2)²`).
pub fn output_mode1_covariance(v: &ModeCovariance, setting: &BenchSetting) -> Matrix2<C64> {
    let (c2, s2, cs) = setting.transmission_products();
    let (pc, ps) = setting.phase();
    let e = C64::new(pc, ps);
    let p = Matrix2::new(e, C64::from(0.0), C64::from(0.0), e.conj());
    let pc = p.conjugate();
    let cv = v.cv();
    (pc * v.v1().matrix() * p) * C64::from(c2) + v.v2().matrix() * C64::from(s2)
        - (cv.adjoint() * p + pc * cv) * C64::from(cs)
}
