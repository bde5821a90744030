//! Steepest ascent of `P(θ, φ) = |⟨e(θ, φ)|ψ⟩|²` with backtracking,
//! carried out on `ln P`.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;

use crate::overlap::{Amp, BraFactor, Contraction};
use crate::qstate::wrap_phase;

/// Sufficient-increase constant for the backtracking test.
const ARMIJO: f64 = 1e-4;
/// Backtracking gives up once the trial move is this short (radians).
const MIN_MOVE: f64 = 1e-15;

/// Parameter layout: `[θ_1..θ_n]` in real mode, `[θ_1..θ_n, φ_1..φ_n]` otherwise.
pub(crate) struct OverlapObjective<'a, T> {
    psi: &'a [T],
    n: usize,
    real_mode: bool,
    contraction: Contraction<T>,
    bras: Vec<BraFactor<T>>,
    d_theta: Vec<T>,
    d_phi: Vec<T>,
}

impl<'a, T: Amp> OverlapObjective<'a, T> {
    pub fn new(psi: &'a [T], n: usize, real_mode: bool) -> Self {
        OverlapObjective {
            psi,
            n,
            real_mode,
            contraction: Contraction::new(n),
            bras: Vec::with_capacity(n),
            d_theta: vec![T::default(); n],
            d_phi: vec![T::default(); n],
        }
    }

    pub fn dim(&self) -> usize {
        if self.real_mode {
            self.n
        } else {
            2 * self.n
        }
    }

    fn load(&mut self, x: &[f64]) {
        let n = self.n;
        self.bras.clear();
        for k in 0..n {
            let phi = if self.real_mode { 0.0 } else { x[n + k] };
            self.bras.push(T::bra(x[k], phi));
        }
    }

    pub fn value(&mut self, x: &[f64]) -> f64 {
        self.load(x);
        self.contraction.amplitude(self.psi, &self.bras).norm_sqr()
    }

    pub fn value_grad(&mut self, x: &[f64], grad: &mut [f64]) -> f64 {
        self.load(x);
        let d_phi = if self.real_mode {
            None
        } else {
            Some(&mut self.d_phi[..])
        };
        let z =
            self.contraction
                .amplitude_and_partials(self.psi, &self.bras, &mut self.d_theta, d_phi);
        let n = self.n;
        let (g_theta, g_phi) = grad.split_at_mut(n);
        for (g, d) in g_theta.iter_mut().zip(&self.d_theta) {
            *g = 2.0 * z.re_conj_mul(*d);
        }
        if !self.real_mode {
            for (g, d) in g_phi.iter_mut().zip(&self.d_phi) {
                *g = 2.0 * z.re_conj_mul(*d);
            }
        }
        z.norm_sqr()
    }

    /// Folds coordinates into the canonical ranges without changing `P`.
    ///
    /// `θ -> θ + π` only flips the global sign of the qubit factor, so `θ` is
    /// first reduced modulo `π` into `[-π/2, π/2]`. In complex mode a negative
    /// `θ` is then absorbed as `θ -> -θ, φ -> φ + π`.
    pub fn canonicalize(&self, x: &mut [f64]) {
        let n = self.n;
        for k in 0..n {
            let mut theta = x[k] - PI * (x[k] / PI).round();
            if !self.real_mode {
                if theta < 0.0 {
                    theta = -theta;
                    x[n + k] += PI;
                }
                x[n + k] = wrap_phase(x[n + k]);
            }
            x[k] = theta.clamp(-FRAC_PI_2, FRAC_PI_2);
        }
    }

    /// Uniform start: `θ` over its valid range, `φ` over `[0, 2π)`.
    pub fn random_start<R: Rng>(&self, rng: &mut R) -> Vec<f64> {
        let n = self.n;
        let mut x = Vec::with_capacity(self.dim());
        for _ in 0..n {
            let theta = if self.real_mode {
                rng.random_range(-FRAC_PI_2..FRAC_PI_2)
            } else {
                rng.random_range(0.0..=FRAC_PI_2)
            };
            x.push(theta);
        }
        if !self.real_mode {
            for _ in 0..n {
                x.push(rng.random_range(0.0..std::f64::consts::TAU));
            }
        }
        x
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct AscentSettings {
    pub max_iterations: usize,
    pub step_init: f64,
    pub grad_tol: f64,
    pub value_tol: f64,
}

#[derive(Debug, Clone)]
pub(crate) struct AscentOutcome {
    pub value: f64,
    pub x: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Steepest ascent of `ln P` from `x0` until a stopping rule fires.
///
/// `ln P` has the same maximizers as `P`, but its gradient `∇P / P` does not
/// vanish in the low-overlap regions where random starts usually land.
/// Each iteration tries the step `s` and halves it until
/// `ln P(x + s g) ≥ ln P(x) + c·s·|g|²` with `g = ∇ln P`. After an accepted
/// move the next trial starts from twice the accepted step, capped at
/// `64 · step_init`. Both tolerances are relative to `P`.
pub(crate) fn ascend<T: Amp>(
    obj: &mut OverlapObjective<'_, T>,
    mut x: Vec<f64>,
    settings: &AscentSettings,
) -> AscentOutcome {
    let dim = obj.dim();
    obj.canonicalize(&mut x);
    let mut grad = vec![0.0; dim];
    let mut trial = vec![0.0; dim];
    let mut value = obj.value_grad(&x, &mut grad);
    let max_step = 64.0 * settings.step_init;
    let mut step = settings.step_init;
    let mut converged = false;
    let mut iterations = 0;

    while iterations < settings.max_iterations {
        if value < f64::MIN_POSITIVE {
            // Exactly orthogonal start: no direction to follow.
            break;
        }
        for g in grad.iter_mut() {
            *g /= value;
        }
        let grad_sq: f64 = grad.iter().map(|g| g * g).sum();
        let grad_norm = grad_sq.sqrt();
        if grad_norm <= settings.grad_tol {
            converged = true;
            break;
        }
        iterations += 1;

        let log_value = value.ln();
        let mut accepted = None;
        while step * grad_norm >= MIN_MOVE {
            for ((t, xi), gi) in trial.iter_mut().zip(&x).zip(&grad) {
                *t = xi + step * gi;
            }
            obj.canonicalize(&mut trial);
            let candidate = obj.value(&trial);
            if candidate > 0.0 && candidate.ln() >= log_value + ARMIJO * step * grad_sq {
                accepted = Some(candidate);
                break;
            }
            step *= 0.5;
        }
        let Some(candidate) = accepted else {
            // No representable ascent step: numerically stationary.
            converged = true;
            break;
        };

        std::mem::swap(&mut x, &mut trial);
        let gain = candidate - value;
        let before = value;
        value = obj.value_grad(&x, &mut grad);
        if gain <= settings.value_tol * before {
            converged = true;
            break;
        }
        step = (2.0 * step).min(max_step);
    }

    AscentOutcome {
        value,
        x,
        iterations,
        converged,
    }
}
