//! Simulation toolkit for fault-tolerant quantum computation on the planar
//! surface code.
//!
//! The crate is organized around a handful of cooperating subsystems:
//!
//! - [`pauli`] — signed Pauli operators in binary-symplectic form and a
//!   stabilizer tableau with the three measurement cases.
//! - [`statevector`] — a small dense complex-amplitude simulator (≤ 20 qubits)
//!   used as a ground-truth oracle and for non-stabilizer states.
//! - [`lattice`] — planar surface-code geometry (smooth/rough boundaries) and
//!   the six-step syndrome-extraction schedule.
//! - [`noise`] — the four-parameter circuit-level error model.
//! - [`frame`] — fast Pauli-frame Monte Carlo of repeated noisy extraction.
//! - [`decoder`] — space-time matching graphs with boundary nodes, exact
//!   minimum-weight perfect matching, corrections, and an incremental decoder.
//! - [`logical`] — tableau-level defect-based logical qubits: creation,
//!   movement, braided CNOT, state injection and transversal Hadamard.
//! - [`magic`] — |Y⟩ and |A⟩ distillation circuits and teleported rotations.
//! - [`threshold`] — the Monte Carlo harness that estimates the threshold
//!   error rate from lifetime-versus-p sweeps.
//!
//! The [`oracle`] module holds deliberately slow reference implementations
//! (brute-force matching, etc.) used by the test-suite; they share no code
//! with the fast paths they check.

pub mod bits;
pub mod decoder;
pub mod error;
pub mod frame;
pub mod lattice;
pub mod logical;
pub mod magic;
pub mod noise;
pub mod oracle;
pub mod pauli;
pub mod statevector;
pub mod threshold;

pub use error::SimError;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, SimError>;
