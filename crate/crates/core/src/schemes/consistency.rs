use serde::{Deserialize, Serialize};

use super::result::SchemeResult;

/// Agreement of the invariants two schemes share (`J1`, `J2`, `J3`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyReport {
    /// `first - second` for `J1`, `J2`, `J3`.
    pub deltas: [f64; 3],
    /// `sqrt(σ1² + σ2²)` per invariant, when both results carry errors.
    pub combined_stderr: Option<[f64; 3]>,
    pub tol: f64,
    /// Every `|delta| <= tol`.
    pub consistent: bool,
}

impl ConsistencyReport {
    /// Whether every delta lies within `k` combined standard errors.
    pub fn within_sigma(&self, k: f64) -> Option<bool> {
        self.combined_stderr
            .map(|se| self.deltas.iter().zip(se).all(|(d, s)| d.abs() <= k * s))
    }
}

/// Compares two results obtained from the same input state. Report only;
/// never fails.
pub fn consistency_check(
    first: &SchemeResult,
    second: &SchemeResult,
    tol: f64,
) -> ConsistencyReport {
    let (a, b) = (&first.invariants, &second.invariants);
    let deltas = [a.j1 - b.j1, a.j2 - b.j2, a.j3 - b.j3];
    let combined_stderr = first
        .stderr
        .zip(second.stderr)
        .map(|(x, y)| [x.j1.hypot(y.j1), x.j2.hypot(y.j2), x.j3.hypot(y.j3)]);
    ConsistencyReport {
        deltas,
        combined_stderr,
        tol,
        consistent: deltas.iter().all(|d| d.abs() <= tol),
    }
}
