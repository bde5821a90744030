//! Grover dynamics in the phase-oracle form.
//!
//! One iteration is `U_G = (2|η⟩⟨η| - I) I_f`: flip the sign of every
//! marked amplitude, then reflect every amplitude about the mean,
//! `a_i -> 2ā - a_i`. The ancilla qubit of the textbook construction is not
//! represented.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use num_complex::Complex64;

use crate::entanglement::{groverian_measure, OptimizerOptions};
use crate::error::{Error, Result};
use crate::exec::map_ordered;
use crate::qstate::{dim_for, RegisterState};

/// Marked basis indices: the states with `f(i) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedSet {
    n: usize,
    indices: Vec<usize>,
}

impl MarkedSet {
    /// Sorts `indices`; rejects duplicates, out-of-range values, an empty
    /// set and a set covering the whole space.
    pub fn new(n: usize, mut indices: Vec<usize>) -> Result<Self> {
        let dim = dim_for(n)?;
        indices.sort_unstable();
        if indices.is_empty() {
            return Err(Error::InvalidMarkedSet("no marked states".into()));
        }
        if indices.len() >= dim {
            return Err(Error::InvalidMarkedSet(format!(
                "r = {} must be below N = {dim}",
                indices.len()
            )));
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= dim) {
            return Err(Error::InvalidMarkedSet(format!(
                "index {bad} out of range for n = {n}"
            )));
        }
        if let Some(w) = indices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidMarkedSet(format!("duplicate index {}", w[0])));
        }
        Ok(MarkedSet { n, indices })
    }

    pub fn single(n: usize, index: usize) -> Result<Self> {
        Self::new(n, vec![index])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// `r`, the number of marked states.
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    /// `r / N`.
    pub fn fraction(&self) -> f64 {
        self.len() as f64 / (1usize << self.n) as f64
    }

    /// `Σ_{m ∈ marked} |a_m|²`.
    pub fn success_probability(&self, state: &RegisterState) -> Result<f64> {
        check_n(self.n, state.n())?;
        let amps = state.amplitudes();
        Ok(self.indices.iter().map(|&m| amps[m].norm_sqr()).sum())
    }
}

/// Optimal iteration counts for `N = 2^n` and `r` marked states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroverSchedule {
    /// `⌊(π/2 - sqrt(r/(N-r))) / arccos(1 - 2r/N)⌋`.
    pub tau_exact: u64,
    /// `⌊(π/4) sqrt(N/r)⌋`.
    pub tau_approx: u64,
    pub t: u64,
}

/// State summary after `t` iterations.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryPoint {
    pub t: usize,
    pub mean_amplitude: Complex64,
    pub success_prob: f64,
    pub groverian: Option<f64>,
}

fn check_n(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::DimensionMismatch { expected, actual });
    }
    Ok(())
}

fn oracle_in_place(amps: &mut [Complex64], marked: &MarkedSet) {
    for &m in &marked.indices {
        amps[m] = -amps[m];
    }
}

fn diffusion_in_place(amps: &mut [Complex64]) {
    let twice_mean = amps.iter().sum::<Complex64>() * (2.0 / amps.len() as f64);
    for a in amps.iter_mut() {
        *a = twice_mean - *a;
    }
}

/// `a_i -> -a_i` for marked `i`.
pub fn oracle_apply(state: &RegisterState, marked: &MarkedSet) -> Result<RegisterState> {
    check_n(marked.n, state.n())?;
    let mut amps = state.amplitudes().to_vec();
    oracle_in_place(&mut amps, marked);
    Ok(RegisterState::from_parts(state.n(), amps))
}

/// Inversion about the mean, `a_i -> 2ā - a_i`.
pub fn diffusion_apply(state: &RegisterState) -> RegisterState {
    let mut amps = state.amplitudes().to_vec();
    diffusion_in_place(&mut amps);
    RegisterState::from_parts(state.n(), amps)
}

/// One Grover iteration: oracle followed by diffusion.
pub fn grover_step(state: &RegisterState, marked: &MarkedSet) -> Result<RegisterState> {
    check_n(marked.n, state.n())?;
    let mut amps = state.amplitudes().to_vec();
    oracle_in_place(&mut amps, marked);
    diffusion_in_place(&mut amps);
    Ok(RegisterState::from_parts(state.n(), amps))
}

/// `ψ(0), ψ(1), ..., ψ(steps)`.
pub fn evolve(
    state0: &RegisterState,
    marked: &MarkedSet,
    steps: usize,
) -> Result<Vec<RegisterState>> {
    check_n(marked.n, state0.n())?;
    let mut out = Vec::with_capacity(steps + 1);
    out.push(state0.clone());
    let mut amps = state0.amplitudes().to_vec();
    for _ in 0..steps {
        oracle_in_place(&mut amps, marked);
        diffusion_in_place(&mut amps);
        out.push(RegisterState::from_parts(state0.n(), amps.clone()));
    }
    Ok(out)
}

/// Trajectory for `t = 0..=steps`. With `record_groverian`, each `ψ(t)` is
/// measured after the sequential sweep; those evaluations are independent
/// and follow `opts.execution`.
pub fn run(
    state0: &RegisterState,
    marked: &MarkedSet,
    steps: usize,
    record_groverian: bool,
    opts: &OptimizerOptions,
) -> Result<Vec<TrajectoryPoint>> {
    let states = evolve(state0, marked, steps)?;
    let groverians: Vec<Option<f64>> = if record_groverian {
        opts.validate()?;
        map_ordered(opts.execution, &states, |s| groverian_measure(s, opts))
            .into_iter()
            .map(|r| r.map(|m| Some(m.groverian)))
            .collect::<Result<_>>()?
    } else {
        vec![None; states.len()]
    };
    states
        .iter()
        .zip(groverians)
        .enumerate()
        .map(|(t, (s, groverian))| {
            Ok(TrajectoryPoint {
                t,
                mean_amplitude: s.mean_amplitude(),
                success_prob: marked.success_probability(s)?,
                groverian,
            })
        })
        .collect()
}

/// Both optimal-time formulas, evaluated as written. Negative values clamp
/// to zero.
pub fn optimal_iterations(n: usize, r: usize) -> Result<GroverSchedule> {
    let dim = dim_for(n)?;
    if r == 0 || r >= dim {
        return Err(Error::OutOfRange {
            name: "r",
            value: r as f64,
            expected: "1 <= r < 2^n",
        });
    }
    let big_n = dim as f64;
    let r = r as f64;
    let exact = (FRAC_PI_2 - (r / (big_n - r)).sqrt()) / (1.0 - 2.0 * r / big_n).acos();
    let approx = FRAC_PI_4 * (big_n / r).sqrt();
    Ok(GroverSchedule {
        tau_exact: exact.floor().max(0.0) as u64,
        tau_approx: approx.floor().max(0.0) as u64,
        t: 0,
    })
}

/// `N |ā|²`: leading-order success probability averaged over marked sets.
pub fn success_probability_estimate(state0: &RegisterState) -> f64 {
    state0.dim() as f64 * state0.mean_amplitude().norm_sqr()
}
