//! Closed-form `P_max` for two-qubit states and the symmetric families.

use crate::error::{Error, Result};
use crate::qstate::RegisterState;

fn check_unit(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::OutOfRange {
            name,
            value,
            expected: "0 <= value <= 1",
        });
    }
    Ok(())
}

/// `G = sqrt(1 - P_max)`.
pub fn groverian_from_pmax(p_max: f64) -> f64 {
    (1.0 - p_max).max(0.0).sqrt()
}

/// `(1 + sqrt(1 - 4|det D|²)) / 2` with `D = [[a00, a01], [a10, a11]]`.
///
/// Equals the squared largest Schmidt coefficient, so it holds for complex
/// amplitudes too.
pub fn p_max_two_qubit(psi: &RegisterState) -> Result<f64> {
    if psi.n() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: psi.n(),
        });
    }
    let a = psi.amplitudes();
    let det = a[0] * a[3] - a[1] * a[2];
    let disc = (1.0 - 4.0 * det.norm_sqr()).max(0.0);
    Ok(0.5 * (1.0 + disc.sqrt()))
}

/// `max(|a_0|², 1 - |a_0|²)` for `a_0|0…0⟩ + a_{N-1}|1…1⟩`.
pub fn p_max_generalized_ghz(a0_sq: f64) -> Result<f64> {
    check_unit("a0_sq", a0_sq)?;
    Ok(a0_sq.max(1.0 - a0_sq))
}

/// `(1 - 1/n)^{n-1}`; tends to `1/e`.
pub fn p_max_w(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::OutOfRange {
            name: "n",
            value: n as f64,
            expected: "n >= 2",
        });
    }
    let n = n as f64;
    Ok(((n - 1.0) * (-1.0 / n).ln_1p()).exp())
}

/// `C(n, n/2) / 2^n` for the balanced state of even `n`.
pub fn p_max_balanced(n: usize) -> Result<f64> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::OutOfRange {
            name: "n",
            value: n as f64,
            expected: "even n >= 2",
        });
    }
    let half = n / 2;
    // C(2h, h) / 4^h accumulated as a product of ratios below one.
    Ok((1..=half).fold(1.0, |acc, k| acc * (half + k) as f64 / (4 * k) as f64))
}

/// `sqrt(2/π) / sqrt(n)`, the large-`n` form of [`p_max_balanced`].
pub fn p_max_balanced_asymptotic(n: usize) -> f64 {
    (2.0 / std::f64::consts::PI).sqrt() / (n as f64).sqrt()
}

/// Binary entropy `-p log₂ p - (1-p) log₂(1-p)` of the two-qubit reduced
/// state with largest eigenvalue `p`.
pub fn entropy_from_pmax(p_max: f64) -> Result<f64> {
    check_unit("p_max", p_max)?;
    let term = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    Ok(term(p_max) + term(1.0 - p_max))
}
