//! |Y⟩ distillation with the 7-qubit Steane code.
//!
//! Wires 0..6 carry qubits 1..7. The encoder takes |ψ⟩ on wire 0, |0⟩ on
//! wires 1–3 and |+⟩ on wires 4–6 (prepared by the H gates) into a Steane
//! codeword. Run backwards on seven approximate |Y⟩ states, wires 4–6 come
//! out as X-basis measurements, wires 1–3 as Z-basis measurements, and wire
//! 0 carries the distilled state — |Y⟩ or Z|Y⟩ according to the measurement
//! pattern, with unlisted patterns rejected.
//!
//! Since |Y⟩ and every Pauli-damaged |Y⟩ are stabilizer states, the whole
//! distillation runs on either backend; the statevector and tableau paths
//! act as independent oracles for each other.

use super::{apply_gates, css_encoder, reversed, EncGate};
use crate::pauli::{Pauli, PauliOperator, StabilizerTableau};
use crate::statevector::StateVector;
use crate::{Result, SimError};
use rand::Rng;

pub const N: usize = 7;
pub const OUTPUT_WIRE: usize = 0;
pub const MZ_WIRES: [usize; 3] = [1, 2, 3];
/// The three X-measured wires in the column order of the acceptance table.
pub const MX_WIRES: [usize; 3] = [6, 5, 4];

/// X stabilizer generators (pivot, support), 0-indexed wires.
fn x_generators() -> Vec<(usize, Vec<usize>)> {
    vec![
        (6, vec![0, 1, 3, 6]),
        (5, vec![0, 2, 3, 5]),
        (4, vec![1, 2, 3, 4]),
    ]
}

/// Logical X support (weight-3 representative through the input wire).
const LOGICAL_X: [usize; 3] = [0, 1, 2];

/// Encoding circuit in application order.
pub fn encoder() -> Vec<EncGate> {
    css_encoder(OUTPUT_WIRE, &LOGICAL_X, &x_generators())
}

/// Stabilizer generators of the encoded state (X and Z parts; Steane is
/// self-dual so both use the same supports).
pub fn code_stabilizers() -> Vec<PauliOperator> {
    let mut out = Vec::new();
    for (_, support) in x_generators() {
        out.push(PauliOperator::from_support(N, Pauli::X, &support).unwrap());
        out.push(PauliOperator::from_support(N, Pauli::Z, &support).unwrap());
    }
    out
}

/// The acceptance table: measurement pattern (three M_X bits then three M_Z
/// bits) and whether a corrective Z is required on the output.
pub fn table_one() -> [([u8; 6], bool); 8] {
    [
        ([0, 0, 0, 0, 0, 0], true),
        ([0, 0, 1, 1, 1, 1], true),
        ([0, 1, 0, 1, 0, 1], false),
        ([0, 1, 1, 0, 1, 0], false),
        ([1, 0, 0, 0, 1, 1], false),
        ([1, 0, 1, 1, 0, 0], false),
        ([1, 1, 0, 1, 1, 0], true),
        ([1, 1, 1, 0, 0, 1], true),
    ]
}

/// Look a pattern up in the acceptance table.
pub fn classify(pattern: &[u8; 6]) -> Option<bool> {
    table_one().iter().find(|(p, _)| p == pattern).map(|&(_, z)| z)
}

#[derive(Debug, Clone)]
pub struct DistillOutcome {
    /// Measurement pattern: M_X bits then M_Z bits.
    pub pattern: [u8; 6],
    /// Accepted = pattern listed in the table.
    pub accepted: bool,
    /// Whether the tabulated corrective Z was applied to the output.
    pub correction_applied: bool,
    /// The (corrected, when accepted) single-qubit output state.
    pub output: StateVector,
}

/// Run the distillation circuit on seven arbitrary single-qubit inputs.
pub fn distill_y(inputs: &[StateVector; 7], rng: &mut impl Rng) -> Result<DistillOutcome> {
    distill_y_forced(inputs, None, rng)
}

/// Same, with the three X-basis outcomes pinned (for table enumeration).
pub fn distill_y_forced(
    inputs: &[StateVector; 7],
    forced_mx: Option<[u8; 3]>,
    rng: &mut impl Rng,
) -> Result<DistillOutcome> {
    let mut sv = inputs[0].clone();
    for q in &inputs[1..] {
        sv = sv.tensor(q)?;
    }
    apply_gates(&mut sv, &reversed(&encoder()))?;
    let mut pattern = [0u8; 6];
    for (i, &w) in MX_WIRES.iter().enumerate() {
        // The reversed encoder ends with H on these wires, so a Z-basis
        // readout here is the circuit's X-basis measurement.
        let forced = forced_mx.map(|f| if f[i] == 0 { 1 } else { -1 });
        pattern[i] = sv.measure_qubit_z(w, forced, rng)?;
    }
    for (i, &w) in MZ_WIRES.iter().enumerate() {
        pattern[3 + i] = sv.measure_qubit_z(w, None, rng)?;
    }
    let correction = classify(&pattern);
    let accepted = correction.is_some();
    let correction_applied = correction == Some(true);
    if correction_applied {
        sv.apply(crate::statevector::Gate::Z(OUTPUT_WIRE))?;
    }
    // Trace the measured wires out (they are in definite computational
    // states) to leave the single-qubit output.
    let output = extract_output(&sv, &pattern)?;
    Ok(DistillOutcome { pattern, accepted, correction_applied, output })
}

fn extract_output(sv: &StateVector, pattern: &[u8; 6]) -> Result<StateVector> {
    let mut fixed = 0usize;
    for (i, &w) in MX_WIRES.iter().enumerate() {
        fixed |= (pattern[i] as usize) << w;
    }
    for (i, &w) in MZ_WIRES.iter().enumerate() {
        fixed |= (pattern[3 + i] as usize) << w;
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

/// Tableau-backend distillation: inputs are |Y⟩ states with an optional
/// Z-flip per wire (X acts identically on |Y⟩ and Y trivially, so flips
/// cover every Pauli-damaged |Y⟩).
#[derive(Debug, Clone, PartialEq)]
pub struct TableauOutcome {
    pub pattern: [u8; 6],
    pub accepted: bool,
    /// Sign of Y on the output wire after any tabulated correction:
    /// +1 = |Y⟩, −1 = Z|Y⟩ (an accepted-but-wrong distillation).
    pub output_y_sign: i8,
}

pub fn distill_y_tableau(
    flips: &[bool; 7],
    forced_mx: Option<[u8; 3]>,
    rng: &mut impl Rng,
) -> Result<TableauOutcome> {
    let mut gens = Vec::with_capacity(N);
    for k in 0..N {
        let mut y = PauliOperator::single(N, k, Pauli::Y)?;
        if flips[k] {
            y.negate();
        }
        gens.push(y);
    }
    let mut t = StabilizerTableau::from_generators(N, gens)?;
    for g in reversed(&encoder()) {
        t.apply_gate(g.to_clifford_gate())?;
    }
    let mut pattern = [0u8; 6];
    for (i, &w) in MX_WIRES.iter().enumerate() {
        let z = PauliOperator::single(N, w, Pauli::Z)?;
        let forced = forced_mx.map(|f| if f[i] == 0 { 1 } else { -1 });
        let (o, _) = t.measure(&z, forced, rng)?;
        pattern[i] = if o == 1 { 0 } else { 1 };
    }
    for (i, &w) in MZ_WIRES.iter().enumerate() {
        let z = PauliOperator::single(N, w, Pauli::Z)?;
        let (o, _) = t.measure(&z, None, rng)?;
        pattern[3 + i] = if o == 1 { 0 } else { 1 };
    }
    let correction = classify(&pattern);
    let y_out = PauliOperator::single(N, OUTPUT_WIRE, Pauli::Y)?;
    let (mut sign, _) = t.measure(&y_out, None, rng)?;
    if correction == Some(true) {
        sign = -sign;
    }
    Ok(TableauOutcome { pattern, accepted: correction.is_some(), output_y_sign: sign })
}

/// |Y⟩ as a single-qubit statevector.
pub fn y_state() -> StateVector {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    StateVector::from_amplitudes(
        1,
        vec![num_complex::Complex64::new(r, 0.0), num_complex::Complex64::new(0.0, r)],
    )
    .expect("normalized")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::Gate;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn encoder_produces_the_steane_code() {
        // Encode |0⟩: all six stabilizers and logical Z at +1.
        let mut sv = StateVector::zero(N).unwrap();
        apply_gates(&mut sv, &encoder()).unwrap();
        for s in code_stabilizers() {
            assert!((sv.expectation_pauli(&s).unwrap().re - 1.0).abs() < 1e-10, "{s}");
        }
        let z_l = PauliOperator::from_support(N, Pauli::Z, &[0, 1, 2]).unwrap();
        assert!((sv.expectation_pauli(&z_l).unwrap().re - 1.0).abs() < 1e-10);
        // Encode |1⟩: stabilizers still +1, logical Z at −1.
        let mut sv = StateVector::zero(N).unwrap();
        sv.apply(Gate::X(0)).unwrap();
        apply_gates(&mut sv, &encoder()).unwrap();
        for s in code_stabilizers() {
            assert!((sv.expectation_pauli(&s).unwrap().re - 1.0).abs() < 1e-10);
        }
        assert!((sv.expectation_pauli(&z_l).unwrap().re + 1.0).abs() < 1e-10);
    }

    #[test]
    fn encoder_decoder_is_identity() {
        let mut rng = StdRng::seed_from_u64(3);
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
    fn perfect_inputs_reproduce_table_one() {
        // All eight M_X patterns occur; each fixes the M_Z bits and the
        // output, exactly as tabulated.
        let mut rng = StdRng::seed_from_u64(5);
        let inputs: [StateVector; 7] = std::array::from_fn(|_| y_state());
        let mut seen = Vec::new();
        for mx in 0..8u8 {
            let forced = [mx >> 2 & 1, mx >> 1 & 1, mx & 1];
            let out = distill_y_forced(&inputs, Some(forced), &mut rng).unwrap();
            assert!(out.accepted, "pattern {:?} not in the table", out.pattern);
            let y = y_state();
            assert!(
                out.output.distance_up_to_phase(&y) < 1e-10,
                "corrected output differs from |Y⟩ for pattern {:?}",
                out.pattern
            );
            seen.push(out.pattern);
        }
        let mut expected: Vec<[u8; 6]> = table_one().iter().map(|&(p, _)| p).collect();
        seen.sort();
        expected.sort();
        assert_eq!(seen, expected);
    }

    #[test]
    fn tableau_and_statevector_agree() {
        let mut rng = StdRng::seed_from_u64(7);
        for case in 0..40 {
            let flips: [bool; 7] = std::array::from_fn(|k| (case >> k) & 1 == 1);
            let mx = [(case % 2) as u8, ((case / 2) % 2) as u8, ((case / 4) % 2) as u8];
            let tab = distill_y_tableau(&flips, Some(mx), &mut rng).unwrap();
            let inputs: [StateVector; 7] = std::array::from_fn(|k| {
                let mut s = y_state();
                if flips[k] {
                    s.apply(Gate::Z(0)).unwrap();
                }
                s
            });
            let sv = distill_y_forced(&inputs, Some(mx), &mut rng).unwrap();
            assert_eq!(tab.pattern[..3], sv.pattern[..3]);
            assert_eq!(tab.pattern[3..], sv.pattern[3..], "flips {flips:?}");
            assert_eq!(tab.accepted, sv.accepted);
            if tab.accepted {
                let y = y_state();
                let fid = sv.output.fidelity(&y);
                let sv_sign = if fid > 0.5 { 1 } else { -1 };
                assert_eq!(tab.output_y_sign, sv_sign, "flips {flips:?}");
            }
        }
    }

    #[test]
    fn single_flip_is_always_rejected() {
        let mut rng = StdRng::seed_from_u64(9);
        for k in 0..7 {
            let mut flips = [false; 7];
            flips[k] = true;
            for mx in 0..8u8 {
                let forced = [mx >> 2 & 1, mx >> 1 & 1, mx & 1];
                let out = distill_y_tableau(&flips, Some(forced), &mut rng).unwrap();
                assert!(!out.accepted, "single flip on wire {k} slipped through");
            }
        }
    }

    #[test]
    fn x_and_y_errors_behave_like_z_and_identity() {
        // On |Y⟩ inputs an X error equals a Z error up to phase and a Y error
        // does nothing, so the flip model covers all Pauli damage.
        let y = y_state();
        let mut x = y.clone();
        x.apply(Gate::X(0)).unwrap();
        let mut z = y.clone();
        z.apply(Gate::Z(0)).unwrap();
        assert!(x.distance_up_to_phase(&z) < 1e-12);
        let mut yy = y.clone();
        yy.apply(Gate::Y(0)).unwrap();
        assert!(yy.distance_up_to_phase(&y) < 1e-12);
    }
}
