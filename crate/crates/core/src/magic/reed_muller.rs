//! |A⟩ distillation with the 15-qubit Reed-Muller code.
//!
//! Wires 0..14 carry qubits labeled 1..15; the four X generators are the
//! bit-planes of the label, with the power-of-two labels as pivots, and the
//! Z group is spanned by the bit-planes together with their pairwise
//! intersections. The code admits a transversal T, which is what makes the
//! reversed encoder distill |A⟩ = |0⟩ + e^{iπ/4}|1⟩.
//!
//! With perfect inputs only sixteen measurement patterns occur, all yielding
//! |A⟩ up to an X, Y or Z correction. No reference table exists in print, so
//! it is generated once from the perfect-input run and treated as an output
//! artifact.

use super::{apply_gates, css_encoder, reversed, EncGate};
use crate::pauli::{Pauli, PauliOperator};
use crate::statevector::{Gate, StateVector};
use crate::{Result, SimError};
use num_complex::Complex64;
use rand::Rng;

pub const N: usize = 15;
/// Input/output wire: label 15, the all-ones label.
pub const OUTPUT_WIRE: usize = 14;
/// X-measured wires (the bit-plane pivots), highest label first.
pub const MX_WIRES: [usize; 4] = [7, 3, 1, 0];
/// Z-measured wires: everything else, ascending.
pub const MZ_WIRES: [usize; 10] = [2, 4, 5, 6, 8, 9, 10, 11, 12, 13];

fn bitplane(a: usize) -> Vec<usize> {
    (0..N).filter(|w| (w + 1) >> a & 1 == 1).collect()
}

fn x_generators() -> Vec<(usize, Vec<usize>)> {
    (0..4).map(|a| ((1usize << a) - 1, bitplane(a))).collect()
}

/// Logical X support: the even-parity labels {3,5,6,9,10,12,15} — a
/// weight-7 representative through the input wire that avoids every pivot.
const LOGICAL_X: [usize; 7] = [2, 4, 5, 8, 9, 11, 14];

/// Encoding circuit in application order.
pub fn encoder() -> Vec<EncGate> {
    css_encoder(OUTPUT_WIRE, &LOGICAL_X, &x_generators())
}

/// Stabilizer generators of the encoded state: 4 X bit-planes and 10 Z
/// generators (bit-planes and their pairwise intersections).
pub fn code_stabilizers() -> Vec<PauliOperator> {
    let mut out = Vec::new();
    for a in 0..4 {
        out.push(PauliOperator::from_support(N, Pauli::X, &bitplane(a)).unwrap());
        out.push(PauliOperator::from_support(N, Pauli::Z, &bitplane(a)).unwrap());
    }
    for a in 0..4 {
        for b in (a + 1)..4 {
            let support: Vec<usize> = (0..N)
                .filter(|w| (w + 1) >> a & 1 == 1 && (w + 1) >> b & 1 == 1)
                .collect();
            out.push(PauliOperator::from_support(N, Pauli::Z, &support).unwrap());
        }
    }
    out
}

/// |A⟩ as a single-qubit statevector.
pub fn a_state() -> StateVector {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    StateVector::from_amplitudes(
        1,
        vec![
            Complex64::new(r, 0.0),
            Complex64::from_polar(r, std::f64::consts::FRAC_PI_4),
        ],
    )
    .expect("normalized")
}

/// Which Pauli correction turns the raw output into |A⟩, if any.
pub fn nearest_pauli(output: &StateVector) -> Option<Pauli> {
    for p in [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z] {
        let mut candidate = a_state();
        match p {
            Pauli::I => {}
            Pauli::X => candidate.apply(Gate::X(0)).unwrap(),
            Pauli::Y => candidate.apply(Gate::Y(0)).unwrap(),
            Pauli::Z => candidate.apply(Gate::Z(0)).unwrap(),
        }
        if output.fidelity(&candidate) > 1.0 - 1e-9 {
            return Some(p);
        }
    }
    None
}

/// Run the reversed encoder and measure; no classification.
pub fn run_circuit(
    inputs: &[StateVector; 15],
    forced_mx: Option<[u8; 4]>,
    rng: &mut impl Rng,
) -> Result<([u8; 14], StateVector)> {
    let mut sv = inputs[0].clone();
    for q in &inputs[1..] {
        sv = sv.tensor(q)?;
    }
    apply_gates(&mut sv, &reversed(&encoder()))?;
    let mut pattern = [0u8; 14];
    for (i, &w) in MX_WIRES.iter().enumerate() {
        let forced = forced_mx.map(|f| if f[i] == 0 { 1 } else { -1 });
        pattern[i] = sv.measure_qubit_z(w, forced, rng)?;
    }
    for (i, &w) in MZ_WIRES.iter().enumerate() {
        pattern[4 + i] = sv.measure_qubit_z(w, None, rng)?;
    }
    let output = extract_output(&sv, &pattern)?;
    Ok((pattern, output))
}

fn extract_output(sv: &StateVector, pattern: &[u8; 14]) -> Result<StateVector> {
    let mut fixed = 0usize;
    for (i, &w) in MX_WIRES.iter().enumerate() {
        fixed |= (pattern[i] as usize) << w;
    }
    for (i, &w) in MZ_WIRES.iter().enumerate() {
        fixed |= (pattern[4 + i] as usize) << w;
    }
    let amps = sv.amplitudes();
    let a0 = amps[fixed];
    let a1 = amps[fixed | (1 << OUTPUT_WIRE)];
    let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
    if norm < 1e-12 {
        return Err(SimError::ZeroNormProjection);
    }
    StateVector::from_amplitudes(1, vec![a0 / norm, a1 / norm])
}

/// The generated acceptance table: pattern → required Pauli correction.
#[derive(Debug, Clone)]
pub struct AcceptanceTable {
    rows: Vec<([u8; 14], Pauli)>,
}

impl AcceptanceTable {
    /// Generate from the perfect-input run: one row per M_X pattern.
    pub fn generate() -> Result<AcceptanceTable> {
        let mut rng = rand::rngs::mock::StepRng::new(0, 1);
        let inputs: [StateVector; 15] = std::array::from_fn(|_| a_state());
        let mut rows = Vec::with_capacity(16);
        for mx in 0..16u8 {
            let forced = [mx >> 3 & 1, mx >> 2 & 1, mx >> 1 & 1, mx & 1];
            let (pattern, output) = run_circuit(&inputs, Some(forced), &mut rng)?;
            let correction = nearest_pauli(&output).ok_or_else(|| {
                SimError::BadConfig(format!(
                    "perfect-input output for pattern {pattern:?} is not Pauli-close to |A⟩"
                ))
            })?;
            rows.push((pattern, correction));
        }
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        rows.dedup_by(|a, b| a.0 == b.0);
        if rows.len() != 16 {
            return Err(SimError::BadConfig("acceptance table is not 16 distinct rows".into()));
        }
        Ok(AcceptanceTable { rows })
    }

    pub fn rows(&self) -> &[([u8; 14], Pauli)] {
        &self.rows
    }

    pub fn classify(&self, pattern: &[u8; 14]) -> Option<Pauli> {
        self.rows.iter().find(|(p, _)| p == pattern).map(|&(_, c)| c)
    }
}

#[derive(Debug, Clone)]
pub struct DistillOutcome {
    pub pattern: [u8; 14],
    pub accepted: bool,
    pub correction: Option<Pauli>,
    /// Corrected output when accepted, raw output otherwise.
    pub output: StateVector,
}

/// Distill fifteen input states against a generated acceptance table.
pub fn distill_a(
    inputs: &[StateVector; 15],
    table: &AcceptanceTable,
    rng: &mut impl Rng,
) -> Result<DistillOutcome> {
    let (pattern, mut output) = run_circuit(inputs, None, rng)?;
    let correction = table.classify(&pattern);
    if let Some(p) = correction {
        match p {
            Pauli::I => {}
            Pauli::X => output.apply(Gate::X(0))?,
            Pauli::Y => output.apply(Gate::Y(0))?,
            Pauli::Z => output.apply(Gate::Z(0))?,
        }
    }
    Ok(DistillOutcome { pattern, accepted: correction.is_some(), correction, output })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn encoder_produces_the_reed_muller_code() {
        let mut sv = StateVector::zero(N).unwrap();
        apply_gates(&mut sv, &encoder()).unwrap();
        for s in code_stabilizers() {
            assert!((sv.expectation_pauli(&s).unwrap().re - 1.0).abs() < 1e-10, "{s}");
        }
        // Logical Z at +1 for an encoded |0⟩ (weight-3 representative).
        let z_l = PauliOperator::from_support(N, Pauli::Z, &[6, 7, 14]).unwrap();
        assert!((sv.expectation_pauli(&z_l).unwrap().re - 1.0).abs() < 1e-10);
    }

    #[test]
    fn encoder_decoder_is_identity() {
        let mut rng = StdRng::seed_from_u64(11);
        let mut sv = StateVector::zero(N).unwrap();
        for k in 0..N {
            sv.apply(Gate::H(k)).unwrap();
            sv.apply(Gate::Rz { target: k, theta: rng.gen_range(0.0..6.3) }).unwrap();
        }
        let original = sv.clone();
        apply_gates(&mut sv, &encoder()).unwrap();
        apply_gates(&mut sv, &reversed(&encoder())).unwrap();
        assert!(sv.distance_up_to_phase(&original) < 1e-10);
    }

    #[test]
    fn perfect_inputs_always_accepted_with_a_output() {
        let table = AcceptanceTable::generate().unwrap();
        let mut rng = StdRng::seed_from_u64(13);
        let inputs: [StateVector; 15] = std::array::from_fn(|_| a_state());
        for _ in 0..20 {
            let out = distill_a(&inputs, &table, &mut rng).unwrap();
            assert!(out.accepted);
            assert!(out.output.fidelity(&a_state()) > 1.0 - 1e-10);
        }
    }

    #[test]
    fn all_zero_inputs_are_rejected() {
        let table = AcceptanceTable::generate().unwrap();
        let mut rng = StdRng::seed_from_u64(17);
        let zero = StateVector::zero(1).unwrap();
        let inputs: [StateVector; 15] = std::array::from_fn(|_| zero.clone());
        let mut rejected = 0;
        let trials = 200;
        for _ in 0..trials {
            if !distill_a(&inputs, &table, &mut rng).unwrap().accepted {
                rejected += 1;
            }
        }
        // All-|0⟩ inputs have no business passing: expect near-total rejection.
        assert!(rejected as f64 > 0.9 * trials as f64, "rejected {rejected}/{trials}");
    }

    #[test]
    fn single_flip_is_detected() {
        let table = AcceptanceTable::generate().unwrap();
        let mut rng = StdRng::seed_from_u64(19);
        for k in 0..15 {
            let inputs: [StateVector; 15] = std::array::from_fn(|i| {
                let mut s = a_state();
                if i == k {
                    s.apply(Gate::Z(0)).unwrap();
                }
                s
            });
            let out = distill_a(&inputs, &table, &mut rng).unwrap();
            // A weight-1 flip must never produce an accepted-but-wrong state.
            if out.accepted {
                assert!(
                    out.output.fidelity(&a_state()) > 1.0 - 1e-9,
                    "flip on wire {k} slipped through as a wrong output"
                );
            } else {
                assert!(!out.accepted);
            }
        }
    }
}
