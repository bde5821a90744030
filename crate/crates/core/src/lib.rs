//! Statevector simulation of Grover's search from arbitrary pure initial
//! states, and the Groverian entanglement measure `G(ψ) = sqrt(1 - P_max)`.
//!
//! `P_max` is the largest squared overlap of a state with any product state
//! of its qubits. It is found numerically by multi-start gradient ascent over
//! the product-state angles ([`entanglement::groverian_measure`]), with closed
//! forms for the symmetric families (GHZ, W, balanced, two-qubit states).
//!
//! Basis index convention: qubit 1 is the most significant bit of the index.

pub mod entanglement;
pub mod error;
pub mod exec;
pub mod grover;
pub mod hadamard;
mod overlap;
pub mod qstate;
pub mod zoo;

pub use entanglement::{groverian_measure, MeasureResult, OptimizerOptions};
pub use error::{Error, Result};
pub use exec::Execution;
pub use grover::{MarkedSet, TrajectoryPoint};
pub use qstate::{ProductAngles, RegisterState};

pub use num_complex::Complex64;

/// Tolerance on `Σ|a_i|² = 1` enforced by every state constructor.
pub const NORM_TOL: f64 = 1e-12;

/// Tolerance used when comparing states up to a global phase.
pub const FIDELITY_TOL: f64 = 1e-9;
