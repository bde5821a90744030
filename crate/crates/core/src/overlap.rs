//! Contraction kernels for `z = ⟨e|ψ⟩` and its derivatives.
//!
//! A product bra is contracted into the amplitude tensor one qubit at a
//! time, most significant qubit first, so each level halves the working
//! vector and reads two contiguous halves. The gradient reuses the stored
//! prefix levels and contracts the remaining trailing qubits for each `k`,
//! which costs about `6N` multiply-adds in total instead of `nN`.

use std::ops::{Add, Mul};

use num_complex::Complex64;

/// Amplitude scalar: `f64` for real states, `Complex64` otherwise.
pub(crate) trait Amp:
    Copy + Send + Sync + Add<Output = Self> + Mul<Output = Self> + Default
{
    /// `Re(conj(self) * other)`.
    fn re_conj_mul(self, other: Self) -> f64;
    fn norm_sqr(self) -> f64;
    /// Conjugated factor for qubit angles `(θ, φ)`; `f64` ignores `φ`.
    fn bra(theta: f64, phi: f64) -> BraFactor<Self>;
}

impl Amp for f64 {
    #[inline]
    fn re_conj_mul(self, other: Self) -> f64 {
        self * other
    }
    #[inline]
    fn norm_sqr(self) -> f64 {
        self * self
    }
    #[inline]
    fn bra(theta: f64, _phi: f64) -> BraFactor<Self> {
        real_bra(theta)
    }
}

impl Amp for Complex64 {
    #[inline]
    fn re_conj_mul(self, other: Self) -> f64 {
        self.re * other.re + self.im * other.im
    }
    #[inline]
    fn norm_sqr(self) -> f64 {
        Complex64::norm_sqr(&self)
    }
    #[inline]
    fn bra(theta: f64, phi: f64) -> BraFactor<Self> {
        complex_bra(theta, phi)
    }
}

/// Conjugated single-qubit factor `(cos θ, e^{-iφ} sin θ)` and its partials.
#[derive(Debug, Clone, Copy)]
pub(crate) struct BraFactor<T> {
    pub value: [T; 2],
    pub d_theta: [T; 2],
    /// Only the `|1⟩` component depends on φ.
    pub d_phi: T,
}

pub(crate) fn real_bra(theta: f64) -> BraFactor<f64> {
    let (s, c) = theta.sin_cos();
    BraFactor {
        value: [c, s],
        d_theta: [-s, c],
        d_phi: 0.0,
    }
}

pub(crate) fn complex_bra(theta: f64, phi: f64) -> BraFactor<Complex64> {
    let (s, c) = theta.sin_cos();
    let phase = Complex64::from_polar(1.0, -phi);
    BraFactor {
        value: [Complex64::new(c, 0.0), phase * s],
        d_theta: [Complex64::new(-s, 0.0), phase * c],
        d_phi: phase * Complex64::new(0.0, -s),
    }
}

/// Reusable scratch space for one ascent.
pub(crate) struct Contraction<T> {
    n: usize,
    /// Prefix levels stored back to back: lengths N, N/2, ..., 1.
    levels: Vec<T>,
    scratch: Vec<T>,
}

impl<T: Amp> Contraction<T> {
    pub fn new(n: usize) -> Self {
        let dim = 1usize << n;
        Contraction {
            n,
            levels: vec![T::default(); 2 * dim],
            scratch: vec![T::default(); dim],
        }
    }

    /// Offset of prefix level `k` (qubits `0..k` contracted) in `levels`.
    #[inline]
    fn level_offset(&self, k: usize) -> usize {
        let dim = 1usize << self.n;
        2 * dim - (2usize << (self.n - k))
    }

    /// `⟨e|ψ⟩` without storing levels beyond what the loop needs.
    pub fn amplitude(&mut self, psi: &[T], bras: &[BraFactor<T>]) -> T {
        debug_assert_eq!(psi.len(), 1 << self.n);
        let buf = &mut self.scratch;
        let half = psi.len() / 2;
        let [b0, b1] = bras[0].value;
        for r in 0..half {
            buf[r] = b0 * psi[r] + b1 * psi[half + r];
        }
        let mut len = half;
        for bra in &bras[1..] {
            let half = len / 2;
            let [b0, b1] = bra.value;
            for r in 0..half {
                buf[r] = b0 * buf[r] + b1 * buf[half + r];
            }
            len = half;
        }
        buf[0]
    }

    /// Fills the prefix levels and returns `z = ⟨e|ψ⟩`.
    fn fill_levels(&mut self, psi: &[T], bras: &[BraFactor<T>]) -> T {
        let dim = psi.len();
        self.levels[..dim].copy_from_slice(psi);
        let mut offset = 0;
        let mut len = dim;
        for bra in bras {
            let half = len / 2;
            let [b0, b1] = bra.value;
            let (src, dst) = self.levels[offset..].split_at_mut(len);
            for r in 0..half {
                dst[r] = b0 * src[r] + b1 * src[half + r];
            }
            offset += len;
            len = half;
        }
        self.levels[offset]
    }

    /// Returns `z` and writes `∂z/∂θ_k` (and `∂z/∂φ_k` when `d_phi` is given).
    pub fn amplitude_and_partials(
        &mut self,
        psi: &[T],
        bras: &[BraFactor<T>],
        d_theta: &mut [T],
        mut d_phi: Option<&mut [T]>,
    ) -> T {
        let z = self.fill_levels(psi, bras);
        let n = self.n;
        for k in 0..n {
            let start = self.level_offset(k);
            let len = 2usize << (n - 1 - k);
            let (w0, w1) = if k + 1 == n {
                (self.levels[start], self.levels[start + 1])
            } else {
                // Contract trailing qubits n-1, ..., k+1 (least significant first).
                let src = &self.levels[start..start + len];
                let buf = &mut self.scratch;
                let mut cur = len / 2;
                let [b0, b1] = bras[n - 1].value;
                for j in 0..cur {
                    buf[j] = b0 * src[2 * j] + b1 * src[2 * j + 1];
                }
                for q in (k + 1..n - 1).rev() {
                    let [b0, b1] = bras[q].value;
                    cur /= 2;
                    for j in 0..cur {
                        buf[j] = b0 * buf[2 * j] + b1 * buf[2 * j + 1];
                    }
                }
                debug_assert_eq!(cur, 2);
                (buf[0], buf[1])
            };
            let bra = &bras[k];
            d_theta[k] = bra.d_theta[0] * w0 + bra.d_theta[1] * w1;
            if let Some(d_phi) = d_phi.as_deref_mut() {
                d_phi[k] = bra.d_phi * w1;
            }
        }
        z
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_amplitude(psi: &[Complex64], bras: &[BraFactor<Complex64>]) -> Complex64 {
        let n = bras.len();
        psi.iter()
            .enumerate()
            .map(|(i, a)| {
                let mut c = Complex64::new(1.0, 0.0);
                for (k, bra) in bras.iter().enumerate() {
                    c *= bra.value[(i >> (n - 1 - k)) & 1];
                }
                c * a
            })
            .sum()
    }

    #[test]
    fn contraction_matches_direct_sum() {
        for n in 1..=5 {
            let dim = 1 << n;
            let psi: Vec<Complex64> = (0..dim)
                .map(|i| Complex64::new((i as f64 * 0.37).sin(), (i as f64 * 1.3).cos()))
                .collect();
            let bras: Vec<_> = (0..n)
                .map(|k| complex_bra(0.1 + 0.3 * k as f64, 1.7 * k as f64))
                .collect();
            let expected = brute_amplitude(&psi, &bras);
            let mut c = Contraction::new(n);
            assert!((c.amplitude(&psi, &bras) - expected).norm() < 1e-12);
            let mut dt = vec![Complex64::default(); n];
            let mut dp = vec![Complex64::default(); n];
            let z = c.amplitude_and_partials(&psi, &bras, &mut dt, Some(&mut dp));
            assert!((z - expected).norm() < 1e-12);
        }
    }
}
