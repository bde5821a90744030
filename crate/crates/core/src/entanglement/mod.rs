//! The Groverian measure `G(ψ) = sqrt(1 - P_max(ψ))`.
//!
//! `P_max` is found by running independent steepest ascents from random
//! product states and keeping the best local maximum.
//!
//! # Real parameterization
//!
//! Maximizing over real product states only (`θ_k ∈ [-π/2, π/2]`,
//! `φ_k = 0`) halves the search dimension, but it is exact only for some
//! real states. It is chosen automatically when the amplitudes are real and
//! either `n ≤ 2` (the Schmidt vectors of a real 2×2 matrix are real) or all
//! nonzero amplitudes share one sign (then `|Σ a_i c_i*| ≤ Σ a_i |c_i|` and
//! the bound is attained by a nonnegative product state). Other real states
//! can have a strictly larger overlap with a complex product state, e.g.
//! `(0.1, 0.5, -0.3, 0.2, 0.7, -0.1, 0.05, 0.4)/‖·‖` reaches `0.5093`
//! against `0.4768` over real product states.
//!
//! # Reproducibility
//!
//! Restart `i` draws its starting point from `ChaCha8Rng::seed_from_u64(seed)`
//! with `set_stream(i)`. Restarts never share generator state, and the
//! best result is picked by value with ties going to the lowest index, so the
//! outcome does not depend on the execution mode or thread count. The first
//! `k` restarts of a run with more restarts are the same `k` ascents.

mod ascent;
pub mod closed_form;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use closed_form::{
    entropy_from_pmax, groverian_from_pmax, p_max_balanced, p_max_balanced_asymptotic,
    p_max_generalized_ghz, p_max_two_qubit, p_max_w,
};

use self::ascent::{ascend, AscentOutcome, AscentSettings, OverlapObjective};
use crate::error::{Error, Result};
use crate::exec::{map_indices, Execution};
use crate::overlap::Amp;
use crate::qstate::{ProductAngles, RegisterState};

/// Imaginary parts at or below this make a state "real" for mode selection.
pub const REAL_MODE_TOL: f64 = 1e-12;

/// Relative tolerance on `|ψ|² = 1` accepted by the measure.
const MEASURE_NORM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerOptions {
    pub restarts: usize,
    /// Per restart.
    pub max_iterations: usize,
    /// Initial ascent step in radians per unit of `∇ln P`.
    pub step_init: f64,
    /// Stop when `|∇P| ≤ grad_tol · P`.
    pub grad_tol: f64,
    /// Stop when an accepted step raises `P` by no more than `value_tol · P`.
    pub value_tol: f64,
    pub seed: u64,
    /// `Some(true)` forces the real parameterization, `Some(false)` the
    /// complex one, `None` uses [`real_reduction_is_exact`].
    pub force_real_mode: Option<bool>,
    pub execution: Execution,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        OptimizerOptions {
            restarts: 32,
            max_iterations: 5000,
            step_init: 0.3,
            grad_tol: 1e-10,
            value_tol: 1e-13,
            seed: 0,
            force_real_mode: None,
            execution: Execution::default(),
        }
    }
}

impl OptimizerOptions {
    /// Defaults with `restarts = max(32, 8n)`.
    pub fn for_qubits(n: usize) -> Self {
        OptimizerOptions {
            restarts: default_restarts(n),
            ..Self::default()
        }
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::InvalidOptions("restarts must be >= 1".into()));
        }
        for (name, v) in [
            ("step_init", self.step_init),
            ("grad_tol", self.grad_tol),
            ("value_tol", self.value_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidOptions(format!(
                    "{name} must be > 0, got {v}"
                )));
            }
        }
        Ok(())
    }

    fn ascent_settings(&self) -> AscentSettings {
        AscentSettings {
            max_iterations: self.max_iterations,
            step_init: self.step_init,
            grad_tol: self.grad_tol,
            value_tol: self.value_tol,
        }
    }
}

/// `max(32, 8n)`: local maxima multiply with `n`.
pub fn default_restarts(n: usize) -> usize {
    (8 * n).max(32)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureResult {
    pub p_max: f64,
    /// `sqrt(1 - p_max)`.
    pub groverian: f64,
    pub best_angles: ProductAngles,
    /// Local maximum reached by each restart, in restart order.
    pub restart_values: Vec<f64>,
    /// Fraction of restarts that met a stopping tolerance before running out
    /// of iterations.
    pub converged_fraction: f64,
    pub total_iterations: usize,
}

impl MeasureResult {
    fn from_outcomes(outcomes: Vec<AscentOutcome>, n: usize, real_mode: bool) -> Self {
        let mut best = 0;
        for (i, o) in outcomes.iter().enumerate() {
            if o.value > outcomes[best].value {
                best = i;
            }
        }
        let restart_values: Vec<f64> = outcomes.iter().map(|o| o.value.min(1.0)).collect();
        let p_max = restart_values[best];
        let converged = outcomes.iter().filter(|o| o.converged).count();
        let x = &outcomes[best].x;
        let best_angles = if real_mode {
            ProductAngles::from_canonical(x[..n].to_vec(), vec![0.0; n], true)
        } else {
            ProductAngles::from_canonical(x[..n].to_vec(), x[n..].to_vec(), false)
        };
        MeasureResult {
            p_max,
            groverian: groverian_from_pmax(p_max),
            best_angles,
            restart_values,
            converged_fraction: converged as f64 / outcomes.len() as f64,
            total_iterations: outcomes.iter().map(|o| o.iterations).sum(),
        }
    }
}

/// Multi-start gradient ascent for `P_max(ψ)` and `G(ψ)`.
///
/// Restarts that exhaust `max_iterations` still contribute their value; if
/// none converge, the best value is returned with `converged_fraction = 0`.
pub fn groverian_measure(psi: &RegisterState, opts: &OptimizerOptions) -> Result<MeasureResult> {
    opts.validate()?;
    let norm = psi.norm_sqr();
    if (norm - 1.0).abs() > MEASURE_NORM_TOL {
        return Err(Error::NotNormalized(norm));
    }
    let n = psi.n();
    let amps = psi.amplitudes();
    let is_real = psi.is_real(REAL_MODE_TOL);
    let real_mode = opts
        .force_real_mode
        .unwrap_or_else(|| real_reduction_is_exact(psi));

    let nonzero: Vec<usize> = psi.support(0.0);
    if let [index] = nonzero[..] {
        return Ok(basis_state_result(n, index, amps[index], real_mode));
    }

    let outcomes = if real_mode && is_real {
        let re: Vec<f64> = amps.iter().map(|a| a.re).collect();
        run_restarts(&re, n, true, opts)
    } else {
        run_restarts(amps, n, real_mode, opts)
    };
    Ok(MeasureResult::from_outcomes(outcomes, n, real_mode))
}

/// True when `P_max` over real product states equals the full `P_max`:
/// the state is real (within [`REAL_MODE_TOL`]) and either `n ≤ 2` or its
/// nonzero amplitudes all have the same sign.
pub fn real_reduction_is_exact(psi: &RegisterState) -> bool {
    if !psi.is_real(REAL_MODE_TOL) {
        return false;
    }
    if psi.n() <= 2 {
        return true;
    }
    let amps = psi.amplitudes();
    let all_nonneg = amps.iter().all(|a| a.re >= -REAL_MODE_TOL);
    let all_nonpos = amps.iter().all(|a| a.re <= REAL_MODE_TOL);
    all_nonneg || all_nonpos
}

fn run_restarts<T: Amp>(
    amps: &[T],
    n: usize,
    real_mode: bool,
    opts: &OptimizerOptions,
) -> Vec<AscentOutcome> {
    let settings = opts.ascent_settings();
    map_indices(opts.execution, opts.restarts, |i| {
        let mut rng = restart_rng(opts.seed, i);
        let mut obj = OverlapObjective::new(amps, n, real_mode);
        let x0 = obj.random_start(&mut rng);
        ascend(&mut obj, x0, &settings)
    })
}

fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

/// `c·|index⟩` is a product state; no search needed.
fn basis_state_result(n: usize, index: usize, amp: Complex64, real_mode: bool) -> MeasureResult {
    let p_max = amp.norm_sqr().min(1.0);
    let thetas: Vec<f64> = (0..n)
        .map(|k| {
            if (index >> (n - 1 - k)) & 1 == 1 {
                std::f64::consts::FRAC_PI_2
            } else {
                0.0
            }
        })
        .collect();
    MeasureResult {
        p_max,
        groverian: groverian_from_pmax(p_max),
        best_angles: ProductAngles::from_canonical(thetas, vec![0.0; n], real_mode),
        restart_values: vec![p_max],
        converged_fraction: 1.0,
        total_iterations: 0,
    }
}
