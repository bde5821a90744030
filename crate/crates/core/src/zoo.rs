//! Named state families.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::qstate::{dim_for, RegisterState};
use crate::NORM_TOL;

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn check_coefficient(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::OutOfRange {
            name,
            value,
            expected: "0 <= value <= 1",
        });
    }
    Ok(())
}

/// Uniform superposition `|η⟩`.
pub fn eta(n: usize) -> Result<RegisterState> {
    let dim = dim_for(n)?;
    Ok(RegisterState::from_parts(
        n,
        vec![real((dim as f64).sqrt().recip()); dim],
    ))
}

/// `(|0…0⟩ + |1…1⟩) / sqrt(2)`.
pub fn ghz(n: usize) -> Result<RegisterState> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    generalized_ghz(n, real(h), real(h))
}

/// `a0|0…0⟩ + a_last|1…1⟩`, requiring `|a0|² + |a_last|² = 1`.
pub fn generalized_ghz(n: usize, a0: Complex64, a_last: Complex64) -> Result<RegisterState> {
    let dim = dim_for(n)?;
    let norm = a0.norm_sqr() + a_last.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized(norm));
    }
    let mut amps = vec![Complex64::default(); dim];
    amps[0] = a0;
    amps[dim - 1] += a_last;
    Ok(RegisterState::from_parts(n, amps))
}

/// Uniform superposition of the `n` weight-one basis states `|2^{k-1}⟩`.
pub fn w_state(n: usize) -> Result<RegisterState> {
    if n < 2 {
        return Err(Error::OutOfRange {
            name: "n",
            value: n as f64,
            expected: "n >= 2",
        });
    }
    let dim = dim_for(n)?;
    let amp = real((n as f64).sqrt().recip());
    let mut amps = vec![Complex64::default(); dim];
    for k in 0..n {
        amps[1 << k] = amp;
    }
    Ok(RegisterState::from_parts(n, amps))
}

/// Uniform superposition of every basis state with `n/2` ones.
pub fn balanced_state(n: usize) -> Result<RegisterState> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::OutOfRange {
            name: "n",
            value: n as f64,
            expected: "even n >= 2",
        });
    }
    let dim = dim_for(n)?;
    let half = (n / 2) as u32;
    let count = (0..dim).filter(|i| i.count_ones() == half).count();
    let amp = real((count as f64).sqrt().recip());
    let amps = (0..dim)
        .map(|i| {
            if i.count_ones() == half {
                amp
            } else {
                Complex64::default()
            }
        })
        .collect();
    Ok(RegisterState::from_parts(n, amps))
}

/// Which two-component mixture a [`MixSpec`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixKind {
    /// `a_η|η⟩ + a_GHZ|GHZ⟩`.
    EtaGhz,
    /// `a_even|ψ_even⟩ + a_odd|ψ_odd⟩`.
    EvenOdd,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixSpec {
    pub kind: MixKind,
    /// `a_GHZ` or `a_even`, in `[0, 1]`.
    pub coefficient: f64,
    pub n: usize,
}

impl MixSpec {
    pub fn build(&self) -> Result<RegisterState> {
        match self.kind {
            MixKind::EtaGhz => eta_ghz_mix(self.n, self.coefficient),
            MixKind::EvenOdd => even_odd_mix(self.n, self.coefficient),
        }
    }
}

/// `a_η|η⟩ + a_GHZ|GHZ⟩` with `a_η = -sqrt(2/N) a_GHZ + sqrt(1 - (1 - 2/N) a_GHZ²)`,
/// the positive root of the normalization condition (`⟨η|GHZ⟩ = sqrt(2/N)`).
pub fn eta_ghz_mix(n: usize, a_ghz: f64) -> Result<RegisterState> {
    check_coefficient("a_ghz", a_ghz)?;
    let dim = dim_for(n)? as f64;
    let overlap = (2.0 / dim).sqrt();
    let a_eta = -overlap * a_ghz + (1.0 - (1.0 - 2.0 / dim) * a_ghz * a_ghz).sqrt();
    let base = a_eta / dim.sqrt();
    let extra = a_ghz * std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = vec![real(base); dim as usize];
    amps[0] += extra;
    *amps.last_mut().unwrap() += extra;
    RegisterState::new(amps)
}

/// `a_even|ψ_even⟩ + sqrt(1 - a_even²)|ψ_odd⟩`, where `ψ_even` (`ψ_odd`) is
/// uniform over the `N/2` indices of even (odd) bit parity.
pub fn even_odd_mix(n: usize, a_even: f64) -> Result<RegisterState> {
    check_coefficient("a_even", a_even)?;
    let dim = dim_for(n)?;
    let scale = ((dim / 2) as f64).sqrt().recip();
    let even = real(a_even * scale);
    let odd = real((1.0 - a_even * a_even).max(0.0).sqrt() * scale);
    let amps = (0..dim)
        .map(|i| if i.count_ones() % 2 == 0 { even } else { odd })
        .collect();
    RegisterState::new(amps)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomStateSpec {
    pub n: usize,
    pub seed: u64,
    /// Standard deviation of the Gaussian draws.
    pub sigma: f64,
}

impl RandomStateSpec {
    pub fn new(n: usize, seed: u64) -> Self {
        RandomStateSpec {
            n,
            seed,
            sigma: 1.0,
        }
    }
}

/// Random state built from Gaussian moduli and uniform phases.
///
/// `N` draws from `Normal(0, σ)` are normalized and their absolute values
/// become `|a_i|`; then `N` phases are drawn uniformly from `[0, 2π)`. Both
/// sequences come from one `ChaCha8Rng` seeded with `spec.seed`, moduli
/// first.
pub fn random_state(spec: &RandomStateSpec) -> Result<RegisterState> {
    let dim = dim_for(spec.n)?;
    let bad_sigma = Error::OutOfRange {
        name: "sigma",
        value: spec.sigma,
        expected: "finite sigma > 0",
    };
    if spec.sigma.is_nan() || spec.sigma <= 0.0 {
        return Err(bad_sigma);
    }
    let normal = Normal::new(0.0, spec.sigma).map_err(|_| bad_sigma)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let draws: Vec<f64> = (0..dim).map(|_| normal.sample(&mut rng)).collect();
    let norm = draws.iter().map(|x| x * x).sum::<f64>().sqrt();
    let amps = draws
        .iter()
        .map(|x| {
            let phase = rng.random_range(0.0..std::f64::consts::TAU);
            Complex64::from_polar(x.abs() / norm, phase)
        })
        .collect();
    RegisterState::normalized(amps)
}
