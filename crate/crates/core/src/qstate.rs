//! Register states, product-state angles and the overlap `|⟨e|ψ⟩|²`.

use std::f64::consts::{FRAC_PI_2, TAU};
use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::overlap::{complex_bra, real_bra, Amp, Contraction};
use crate::{FIDELITY_TOL, NORM_TOL};

/// Normalized amplitude vector over the `2^n` computational basis states.
///
/// Bit `k` of the register (1-based, `k = 1` first) is the `k`-th most
/// significant bit of the basis index.
#[derive(Debug, Clone, PartialEq)]
pub struct RegisterState {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl RegisterState {
    /// Validates length (`2^n`, `n ≥ 1`) and normalization (within [`NORM_TOL`]).
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = qubits_for_len(amplitudes.len())?;
        let norm = norm_sqr(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(RegisterState { n, amplitudes })
    }

    /// Rescales to unit norm. Fails on the zero vector.
    pub fn normalized(mut amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = qubits_for_len(amplitudes.len())?;
        let norm = norm_sqr(&amplitudes);
        if norm.is_nan() || norm <= 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm));
        }
        let scale = norm.sqrt().recip();
        amplitudes.iter_mut().for_each(|a| *a *= scale);
        Ok(RegisterState { n, amplitudes })
    }

    /// Real amplitudes; same checks as [`RegisterState::new`].
    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// Basis state `|index⟩`.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        let dim = dim_for(n)?;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: index,
            });
        }
        let mut amplitudes = vec![Complex64::default(); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(RegisterState { n, amplitudes })
    }

    /// Unchecked constructor for norm-preserving kernels.
    pub(crate) fn from_parts(n: usize, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << n);
        RegisterState { n, amplitudes }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    /// `ā = (1/N) Σ a_i`.
    pub fn mean_amplitude(&self) -> Complex64 {
        self.amplitudes.iter().sum::<Complex64>() / self.dim() as f64
    }

    /// True when every `|Im a_i| ≤ tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        self.amplitudes.iter().all(|a| a.im.abs() <= tol)
    }

    /// Indices of amplitudes with `|a_i|² > tol`.
    pub fn support(&self, tol: f64) -> Vec<usize> {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > tol)
            .map(|(i, _)| i)
            .collect()
    }

    /// `|⟨self|other⟩|²`; insensitive to global phase.
    pub fn fidelity(&self, other: &RegisterState) -> Result<f64> {
        Ok(inner_product(other, self)?.norm_sqr())
    }

    /// Equality up to global phase at [`FIDELITY_TOL`].
    pub fn equal_up_to_phase(&self, other: &RegisterState) -> bool {
        self.fidelity(other)
            .map(|f| (1.0 - f).abs() <= FIDELITY_TOL)
            .unwrap_or(false)
    }

    /// Plain-text form: `n=<int>` then one `re im` line per amplitude.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(48 * self.dim() + 8);
        writeln!(out, "n={}", self.n).unwrap();
        for a in &self.amplitudes {
            writeln!(out, "{:.17e} {:.17e}", a.re, a.im).unwrap();
        }
        out
    }

    /// Parses [`RegisterState::to_text`] output. Blank lines and lines
    /// starting with `#` are skipped. The state must be normalized.
    pub fn from_text(text: &str) -> Result<Self> {
        Self::read_from(text.as_bytes())
    }

    pub fn read_from<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = reader.lines().map(|l| l.map_err(Error::from)).filter(|l| {
            l.as_ref()
                .map(|s| !s.trim().is_empty() && !s.trim_start().starts_with('#'))
                .unwrap_or(true)
        });
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty state file".into()))??;
        let n: usize = header
            .trim()
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad header line {header:?}")))?;
        let dim = dim_for(n)?;
        let mut amplitudes = Vec::with_capacity(dim);
        for line in lines {
            let line = line?;
            let mut parts = line.split_whitespace();
            let mut next = || -> Result<f64> {
                let tok = parts
                    .next()
                    .ok_or_else(|| Error::Parse(format!("expected 're im', got {line:?}")))?;
                tok.parse()
                    .map_err(|_| Error::Parse(format!("bad number {tok:?}")))
            };
            let re = next()?;
            let im = next()?;
            amplitudes.push(Complex64::new(re, im));
        }
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: amplitudes.len(),
            });
        }
        Self::new(amplitudes)
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(self.to_text().as_bytes())?;
        Ok(())
    }

    pub fn read_file(path: &Path) -> Result<Self> {
        let f = std::fs::File::open(path)?;
        Self::read_from(std::io::BufReader::new(f))
    }
}

fn norm_sqr(a: &[Complex64]) -> f64 {
    a.iter().map(Complex64::norm_sqr).sum()
}

fn qubits_for_len(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(len));
    }
    Ok(len.trailing_zeros() as usize)
}

/// `2^n`, rejecting `n = 0` and sizes that do not fit in memory.
pub(crate) fn dim_for(n: usize) -> Result<usize> {
    if n == 0 || n > 30 {
        return Err(Error::OutOfRange {
            name: "n",
            value: n as f64,
            expected: "1 <= n <= 30",
        });
    }
    Ok(1usize << n)
}

/// Angles `(θ_k, φ_k)` of a product state `⊗_k (cos θ_k|0⟩ + e^{iφ_k} sin θ_k|1⟩)`.
///
/// Complex mode: `θ_k ∈ [0, π/2]`, `φ_k ∈ [0, 2π)`.
/// Real mode: `θ_k ∈ [-π/2, π/2]`, every `φ_k = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductAngles {
    thetas: Vec<f64>,
    phis: Vec<f64>,
    real_mode: bool,
}

impl ProductAngles {
    /// Rejects `θ` outside `[0, π/2]`; wraps `φ` into `[0, 2π)`.
    pub fn complex(thetas: Vec<f64>, phis: Vec<f64>) -> Result<Self> {
        if thetas.len() != phis.len() {
            return Err(Error::DimensionMismatch {
                expected: thetas.len(),
                actual: phis.len(),
            });
        }
        check_thetas(&thetas, 0.0, FRAC_PI_2)?;
        let phis = phis
            .into_iter()
            .map(|p| {
                if p.is_finite() {
                    Ok(wrap_phase(p))
                } else {
                    Err(Error::OutOfRange {
                        name: "phi",
                        value: p,
                        expected: "finite",
                    })
                }
            })
            .collect::<Result<_>>()?;
        Ok(ProductAngles {
            thetas,
            phis,
            real_mode: false,
        })
    }

    /// Rejects `θ` outside `[-π/2, π/2]`.
    pub fn real(thetas: Vec<f64>) -> Result<Self> {
        check_thetas(&thetas, -FRAC_PI_2, FRAC_PI_2)?;
        let phis = vec![0.0; thetas.len()];
        Ok(ProductAngles {
            thetas,
            phis,
            real_mode: true,
        })
    }

    /// All `θ_k = π/4`, `φ_k = 0`: the product state `|η⟩`.
    pub fn uniform(n: usize) -> Self {
        ProductAngles {
            thetas: vec![std::f64::consts::FRAC_PI_4; n],
            phis: vec![0.0; n],
            real_mode: false,
        }
    }

    /// Optimizer output, already folded into the canonical ranges.
    pub(crate) fn from_canonical(thetas: Vec<f64>, phis: Vec<f64>, real_mode: bool) -> Self {
        ProductAngles {
            thetas,
            phis,
            real_mode,
        }
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn phis(&self) -> &[f64] {
        &self.phis
    }

    pub fn real_mode(&self) -> bool {
        self.real_mode
    }

    /// One `theta phi` line per qubit.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (t, p) in self.thetas.iter().zip(&self.phis) {
            writeln!(out, "{t:.17e} {p:.17e}").unwrap();
        }
        out
    }
}

fn check_thetas(thetas: &[f64], min: f64, max: f64) -> Result<()> {
    // Allow rounding at the boundary, e.g. asin(1.0) computed slightly high.
    const SLACK: f64 = 1e-14;
    for (index, &value) in thetas.iter().enumerate() {
        if !(value >= min - SLACK && value <= max + SLACK) {
            return Err(Error::AngleOutOfRange {
                index,
                value,
                min,
                max,
            });
        }
    }
    Ok(())
}

pub(crate) fn wrap_phase(phi: f64) -> f64 {
    let w = phi.rem_euclid(TAU);
    // rem_euclid can return TAU itself for tiny negative inputs.
    if w >= TAU {
        0.0
    } else {
        w
    }
}

/// The product state with `c_i = Π_k (cos θ_k)^{1-i_k} (e^{iφ_k} sin θ_k)^{i_k}`.
pub fn product_amplitudes(angles: &ProductAngles, n: usize) -> Result<RegisterState> {
    if angles.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: angles.len(),
        });
    }
    let dim = dim_for(n)?;
    let mut amps = Vec::with_capacity(dim);
    amps.push(Complex64::new(1.0, 0.0));
    for (&theta, &phi) in angles.thetas.iter().zip(&angles.phis) {
        let (s, c) = theta.sin_cos();
        let one = Complex64::from_polar(s, phi);
        let prev = std::mem::take(&mut amps);
        amps.reserve(2 * prev.len());
        for a in prev {
            amps.push(a * c);
            amps.push(a * one);
        }
    }
    Ok(RegisterState::from_parts(n, amps))
}

/// `⟨b|a⟩ = Σ_i conj(b_i) a_i`.
pub fn inner_product(a: &RegisterState, b: &RegisterState) -> Result<Complex64> {
    check_same_n(a.n, b.n)?;
    Ok(a.amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| y.conj() * x)
        .sum())
}

fn check_same_n(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::DimensionMismatch { expected, actual });
    }
    Ok(())
}

/// `P = |⟨e|ψ⟩|²` for the product state `|e⟩` described by `angles`.
pub fn overlap_probability(angles: &ProductAngles, psi: &RegisterState) -> Result<f64> {
    check_same_n(psi.n, angles.len())?;
    let bras: Vec<_> = angles
        .thetas
        .iter()
        .zip(&angles.phis)
        .map(|(&t, &p)| complex_bra(t, p))
        .collect();
    let mut c = Contraction::new(psi.n);
    Ok(c.amplitude(&psi.amplitudes, &bras).norm_sqr())
}

/// Exact gradient of [`overlap_probability`].
///
/// Complex mode: `[∂P/∂θ_1..∂P/∂θ_n, ∂P/∂φ_1..∂P/∂φ_n]`.
/// Real mode: `[∂P/∂θ_1..∂P/∂θ_n]`.
pub fn overlap_gradient(angles: &ProductAngles, psi: &RegisterState) -> Result<Vec<f64>> {
    let n = psi.n;
    check_same_n(n, angles.len())?;
    if angles.real_mode && psi.is_real(0.0) {
        let re: Vec<f64> = psi.amplitudes.iter().map(|a| a.re).collect();
        let bras: Vec<_> = angles.thetas.iter().map(|&t| real_bra(t)).collect();
        let mut c = Contraction::new(n);
        let mut dt = vec![0.0; n];
        let z = c.amplitude_and_partials(&re, &bras, &mut dt, None);
        return Ok(dt.iter().map(|d| 2.0 * z * d).collect());
    }
    let bras: Vec<_> = angles
        .thetas
        .iter()
        .zip(&angles.phis)
        .map(|(&t, &p)| complex_bra(t, p))
        .collect();
    let mut c = Contraction::new(n);
    let mut d_theta = vec![Complex64::default(); n];
    if angles.real_mode {
        let z = c.amplitude_and_partials(&psi.amplitudes, &bras, &mut d_theta, None);
        return Ok(d_theta.iter().map(|d| 2.0 * z.re_conj_mul(*d)).collect());
    }
    let mut d_phi = vec![Complex64::default(); n];
    let z = c.amplitude_and_partials(&psi.amplitudes, &bras, &mut d_theta, Some(&mut d_phi));
    Ok(d_theta
        .iter()
        .chain(&d_phi)
        .map(|d| 2.0 * z.re_conj_mul(*d))
        .collect())
}
