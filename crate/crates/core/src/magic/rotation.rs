//! Teleported rotations from magic-state ancillas.
//!
//! Given an ancilla (|0⟩ + e^{iθ}|1⟩)/√2, a CNOT from the ancilla onto the
//! data qubit followed by a Z measurement of the data wire enacts
//! X^{M_Z}·R_Z((−1)^{M_Z}θ) on the ancilla wire, which becomes the output.
//! The X-axis version conjugates the same gadget with Hadamards and enacts
//! Z^{M_X}·R_X((−1)^{M_X}θ). A failed π/4 attempt is repaired by an X
//! followed by a π/2 attempt (|Y⟩ ancilla); if that also fails, Z then X
//! finish the job deterministically, so at most two ancillas are consumed.

use crate::statevector::{Gate, StateVector};
use crate::{Result, SimError};
use num_complex::Complex64;
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Z,
    X,
}

/// (|0⟩ + e^{iθ}|1⟩)/√2.
pub fn rotation_ancilla(theta: f64) -> StateVector {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    StateVector::from_amplitudes(
        1,
        vec![Complex64::new(r, 0.0), Complex64::from_polar(r, theta)],
    )
    .expect("normalized")
}

/// One teleported-rotation attempt with an explicit ancilla state.
///
/// Returns the output state and the measurement bit (0 = +1 eigenstate, in
/// which case R(θ) was applied; 1 means the byproduct branch).
pub fn teleported_rotation_with_ancilla(
    state: &StateVector,
    ancilla: &StateVector,
    axis: Axis,
    forced: Option<u8>,
    rng: &mut impl Rng,
) -> Result<(StateVector, u8)> {
    if state.n() != 1 || ancilla.n() != 1 {
        return Err(SimError::BadConfig("teleported rotation acts on single qubits".into()));
    }
    if (ancilla.norm_sqr() - 1.0).abs() > 1e-9 {
        return Err(SimError::NotNormalized);
    }
    let mut data = state.clone();
    if axis == Axis::X {
        data.apply(Gate::H(0))?;
    }
    // Wire 0 = data, wire 1 = ancilla; CNOT with the ancilla as control.
    let mut joint = data.tensor(ancilla)?;
    joint.apply(Gate::Cnot { control: 1, target: 0 })?;
    let forced_sign = forced.map(|b| if b == 0 { 1 } else { -1 });
    let m = joint.measure_qubit_z(0, forced_sign, rng)?;
    // The data wire is collapsed; the ancilla wire carries the output.
    let amps = joint.amplitudes();
    let m_idx = m as usize;
    let a0 = amps[m_idx];
    let a1 = amps[m_idx | 2];
    let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
    let mut out = StateVector::from_amplitudes(1, vec![a0 / norm, a1 / norm])?;
    if axis == Axis::X {
        out.apply(Gate::H(0))?;
    }
    Ok((out, m))
}

/// One teleported-rotation attempt with the standard ancilla for `theta`.
pub fn teleported_rotation(
    state: &StateVector,
    theta: f64,
    axis: Axis,
    forced: Option<u8>,
    rng: &mut impl Rng,
) -> Result<(StateVector, u8)> {
    teleported_rotation_with_ancilla(state, &rotation_ancilla(theta), axis, forced, rng)
}

/// Repeat-until-success R_Z(π/4): a |A⟩-ancilla attempt, then on failure an
/// X followed by a |Y⟩-ancilla R_Z(π/2) attempt, then on a second failure
/// the deterministic ZX fix-up. Returns the output and the number of
/// ancillas consumed (expected 1.5, never more than 2).
pub fn rz_quarter_until_success(
    state: &StateVector,
    forced: Option<(u8, u8)>,
    rng: &mut impl Rng,
) -> Result<(StateVector, usize)> {
    let quarter = std::f64::consts::FRAC_PI_4;
    let (out, m1) =
        teleported_rotation(state, quarter, Axis::Z, forced.map(|f| f.0), rng)?;
    if m1 == 0 {
        return Ok((out, 1));
    }
    // Applied X·R_Z(−π/4); aim for R_Z(π/2)·X on top of it.
    let mut fixed = out;
    fixed.apply(Gate::X(0))?;
    let (mut out2, m2) =
        teleported_rotation(&fixed, 2.0 * quarter, Axis::Z, forced.map(|f| f.1), rng)?;
    if m2 == 0 {
        return Ok((out2, 2));
    }
    // Applied X·R_Z(−π/2); Z then X completes R_Z(π/4).
    out2.apply(Gate::Z(0))?;
    out2.apply(Gate::X(0))?;
    Ok((out2, 2))
}
