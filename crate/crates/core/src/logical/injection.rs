//! Arbitrary-state injection into a rough qubit, on the nine-qubit surface
//! fragment with the four stabilizers centered on qubit 5.
//!
//! The sequence measures qubit 5 in X (correcting a −1 with one of the
//! adjacent face operators), Hadamard-transforms and rotates it to the
//! desired state, measures one adjacent face, and corrects a −1 outcome
//! with X₅ followed by one of the vertex operators. Afterwards the state is
//! α·(+Z₅ branch) + β·(−Z₅ branch) with the remaining three table rows all
//! at +1 — a rough logical qubit holding (α, β), with Z₅ as its logical Z
//! and either vertex operator as its logical X.
//!
//! Qubits are numbered 1..9 in the customary figure; indices here are 0..8.

use crate::pauli::{Pauli, PauliOperator};
use crate::statevector::{Gate, StateVector};
use crate::{Result, SimError};
use num_complex::Complex64;
use rand::Rng;

pub const N: usize = 9;
/// Index of the central qubit ("qubit 5").
pub const CENTER: usize = 4;

fn op(p: Pauli, support: &[usize]) -> PauliOperator {
    PauliOperator::from_support(N, p, support).expect("fragment operator")
}

/// X₁X₂X₃X₅ — upper vertex operator.
pub fn vertex_a() -> PauliOperator {
    op(Pauli::X, &[0, 1, 2, 4])
}

/// X₅X₇X₈X₉ — lower vertex operator.
pub fn vertex_b() -> PauliOperator {
    op(Pauli::X, &[4, 6, 7, 8])
}

/// Z₂Z₄Z₅Z₇ — left face operator.
pub fn face_c() -> PauliOperator {
    op(Pauli::Z, &[1, 3, 4, 6])
}

/// Z₃Z₅Z₆Z₈ — right face operator.
pub fn face_d() -> PauliOperator {
    op(Pauli::Z, &[2, 4, 5, 7])
}

/// The final stabilizer rows shared by both branches: the merged vertex
/// operator X₁X₂X₃X₇X₈X₉ and the two faces.
pub fn final_rows() -> [PauliOperator; 3] {
    [op(Pauli::X, &[0, 1, 2, 6, 7, 8]), face_c(), face_d()]
}

/// Logical Z of the injected rough qubit.
pub fn logical_z() -> PauliOperator {
    op(Pauli::Z, &[CENTER])
}

#[derive(Debug, Clone)]
pub struct InjectionOutcome {
    pub state: StateVector,
    pub m_x: i8,
    pub m_z: i8,
}

/// Run the injection sequence for amplitudes (α, β).
///
/// `forced` pins the two random measurement outcomes (M_X of qubit 5, M_Z of
/// the face operator) for reproducible comparisons.
pub fn inject_state(
    alpha: Complex64,
    beta: Complex64,
    forced: Option<(i8, i8)>,
    rng: &mut impl Rng,
) -> Result<InjectionOutcome> {
    if ((alpha.norm_sqr() + beta.norm_sqr()) - 1.0).abs() > 1e-9 {
        return Err(SimError::NotNormalized);
    }
    let mut s = StateVector::zero(N)?;
    // Fix the two vertex operators to +1 (surface initialization: random
    // X-stabilizer signs are treated as errors and corrected; Z₁ and Z₉
    // anticommute with exactly one vertex operator each).
    if s.measure_pauli(&vertex_a(), None, rng)? == -1 {
        s.apply(Gate::Z(0))?;
    }
    if s.measure_pauli(&vertex_b(), None, rng)? == -1 {
        s.apply(Gate::Z(8))?;
    }

    // Measure qubit 5 in the X basis; a −1 is corrected with a face operator.
    let m_x = s.measure_pauli(&op(Pauli::X, &[CENTER]), forced.map(|f| f.0), rng)?;
    if m_x == -1 {
        s.apply_pauli(&face_c())?;
    }
    // Hadamard, then rotate qubit 5 to α|0⟩ + β|1⟩.
    s.apply(Gate::H(CENTER))?;
    s.apply_unitary1(CENTER, [[alpha, -beta.conj()], [beta, alpha.conj()]])?;
    // Measure one face operator; correct a −1 with X₅ and a vertex operator.
    let m_z = s.measure_pauli(&face_c(), forced.map(|f| f.1), rng)?;
    if m_z == -1 {
        s.apply(Gate::X(CENTER))?;
        s.apply_pauli(&vertex_a())?;
    }
    Ok(InjectionOutcome { state: s, m_x, m_z })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_injection_reduces_to_default_init() {
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..8 {
            let out = inject_state(c(1.0, 0.0), c(0.0, 0.0), None, &mut rng).unwrap();
            for row in final_rows() {
                assert!((out.state.expectation_pauli(&row).unwrap().re - 1.0).abs() < 1e-10);
            }
            assert!((out.state.expectation_pauli(&logical_z()).unwrap().re - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn plus_injection_stabilized_by_vertex_ring() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let mut rng = StdRng::seed_from_u64(2);
        for _ in 0..8 {
            let out = inject_state(c(r, 0.0), c(r, 0.0), None, &mut rng).unwrap();
            // +1 eigenstate of X_L (either vertex operator).
            assert!((out.state.expectation_pauli(&vertex_a()).unwrap().re - 1.0).abs() < 1e-10);
            assert!((out.state.expectation_pauli(&vertex_b()).unwrap().re - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn y_injection_checked_with_logical_s_dagger() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let mut rng = StdRng::seed_from_u64(3);
        let out = inject_state(c(r, 0.0), c(0.0, r), None, &mut rng).unwrap();
        let mut s = out.state;
        // S₅† is a logical S†; it maps logical |Y⟩ to logical |+⟩.
        s.apply(Gate::Sdg(CENTER)).unwrap();
        assert!((s.expectation_pauli(&vertex_a()).unwrap().re - 1.0).abs() < 1e-10);
    }

    #[test]
    fn logical_z_expectation_tracks_amplitudes() {
        let mut rng = StdRng::seed_from_u64(4);
        let (alpha, beta) = (c(0.6, 0.0), c(0.0, 0.8));
        let out = inject_state(alpha, beta, None, &mut rng).unwrap();
        let z = out.state.expectation_pauli(&logical_z()).unwrap().re;
        assert!((z - (0.36 - 0.64)).abs() < 1e-10);
    }

    #[test]
    fn non_normalized_rejected() {
        let mut rng = StdRng::seed_from_u64(5);
        assert!(inject_state(c(1.0, 0.0), c(1.0, 0.0), None, &mut rng).is_err());
    }
}
