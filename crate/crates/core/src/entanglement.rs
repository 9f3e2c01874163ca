//! Separability and entanglement measures from the four invariants.
//!
//! All logarithms are base 2.

use serde::{Deserialize, Serialize};

use crate::gaussian::InvariantSet;
use crate::{Error, Result};

/// Default relative tolerance on `|I1 - I2|` for the symmetric formula.
pub const DEFAULT_SYM_TOL: f64 = 1e-6;

/// Radicands down to this value are clamped to zero.
const RADICAND_TOL: f64 = 1e-12;

/// Slack on `Δ̃² - 4 det γ` for the partially transposed spectrum.
const PPT_RADICAND_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimonVerdict {
    pub separable: bool,
    /// `I1 I2 + (1 - |I3|)² - I4 - I1 - I2`.
    pub margin: f64,
}

/// Separability test `I1 I2 + (1 - |I3|)² - I4 >= I1 + I2`, with `I3 >= 0`
/// always separable.
pub fn simon_separable(inv: &InvariantSet) -> SimonVerdict {
    let (i1, i2, i3, i4) = (inv.i1(), inv.i2(), inv.i3(), inv.i4());
    let margin = i1 * i2 + (1.0 - i3.abs()).powi(2) - i4 - i1 - i2;
    SimonVerdict {
        separable: i3 >= 0.0 || margin >= 0.0,
        margin,
    }
}

fn clamped_sqrt(x: f64, what: &str) -> Result<f64> {
    if x < -RADICAND_TOL {
        return Err(Error::NumericalDomain(format!("{what} radicand {x} < 0")));
    }
    Ok(x.max(0.0).sqrt())
}

fn xlog2x(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// `f(x) = c+ log2 c+ - c- log2 c-` with `c± = (x^{-1/2} ± x^{1/2})² / 4`.
fn eof_function(x: f64) -> f64 {
    let (inv_root, root) = (x.sqrt().recip(), x.sqrt());
    let c_plus = (inv_root + root).powi(2) / 4.0;
    let c_minus = (inv_root - root).powi(2) / 4.0;
    xlog2x(c_plus) - xlog2x(c_minus)
}

fn eof_with_i4(inv: &InvariantSet, i4: f64, sym_tol: f64) -> Result<f64> {
    if !inv.is_symmetric(sym_tol) {
        return Err(Error::NotApplicable(format!(
            "entanglement of formation needs I1 = I2 (got {} and {})",
            inv.i1(),
            inv.i2()
        )));
    }
    let (i1, i3) = (inv.i1(), inv.i3().abs());
    let inner = clamped_sqrt(i4 + 2.0 * i1 * i3, "inner")?;
    let x = clamped_sqrt(i1 + i3 - inner, "outer")?;
    if x >= 1.0 {
        return Ok(0.0);
    }
    if x == 0.0 {
        return Err(Error::NumericalDomain("argument x = 0".into()));
    }
    Ok(eof_function(x))
}

/// Entanglement of formation of a symmetric state, in bits.
pub fn eof_symmetric(inv: &InvariantSet, sym_tol: f64) -> Result<f64> {
    eof_with_i4(inv, inv.i4(), sym_tol)
}

/// Lower bound on the entanglement of formation obtained with `I4 = 0`; only
/// `J1, J2, J3` are needed.
pub fn eof_lower_bound(inv: &InvariantSet) -> Result<f64> {
    eof_with_i4(inv, 0.0, DEFAULT_SYM_TOL)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogNegativity {
    pub log_negativity: f64,
    /// Smallest symplectic eigenvalue of the partially transposed state.
    pub nu_tilde_minus: f64,
}

/// Logarithmic negativity from the partially transposed spectrum:
/// `Δ̃ = I1 + I2 - 2 I3`, `ν̃-² = (Δ̃ - √(Δ̃² - 4 det γ))/2`.
pub fn log_negativity(inv: &InvariantSet) -> Result<LogNegativity> {
    let delta = inv.i1() + inv.i2() - 2.0 * inv.i3();
    let det = inv.det_gamma();
    let radicand = delta * delta - 4.0 * det;
    if radicand < -PPT_RADICAND_TOL {
        return Err(Error::NumericalDomain(format!(
            "partially transposed spectrum radicand {radicand} < 0"
        )));
    }
    let plus_sq = 0.5 * (delta + radicand.max(0.0).sqrt());
    if !(plus_sq > 0.0) || det < 0.0 {
        return Err(Error::NumericalDomain(format!(
            "invalid partially transposed spectrum (Δ̃ = {delta}, det = {det})"
        )));
    }
    // Product form avoids cancellation when ν̃- is small.
    let nu = (det / plus_sq).sqrt();
    Ok(LogNegativity {
        log_negativity: (-nu.log2()).max(0.0),
        nu_tilde_minus: nu,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntanglementReport {
    pub separable: bool,
    pub simon_margin: f64,
    /// Present for symmetric states only.
    pub eof: Option<f64>,
    pub eof_lower_bound: Option<f64>,
    pub log_negativity: f64,
    pub nu_tilde_minus: f64,
}

impl EntanglementReport {
    pub fn new(inv: &InvariantSet, sym_tol: f64) -> Result<Self> {
        let simon = simon_separable(inv);
        let optional = |r: Result<f64>| match r {
            Ok(v) => Ok(Some(v)),
            Err(Error::NotApplicable(_)) => Ok(None),
            Err(e) => Err(e),
        };
        let eof = optional(eof_symmetric(inv, sym_tol))?;
        let eof_lower_bound = optional(eof_with_i4(inv, 0.0, sym_tol))?;
        let neg = log_negativity(inv)?;
        Ok(Self {
            separable: simon.separable,
            simon_margin: simon.margin,
            eof,
            eof_lower_bound,
            log_negativity: neg.log_negativity,
            nu_tilde_minus: neg.nu_tilde_minus,
        })
    }
}
