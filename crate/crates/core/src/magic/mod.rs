//! Magic-state distillation and teleported rotations.
//!
//! The |Y⟩ = |0⟩ + i|1⟩ state is distilled by running the 7-qubit Steane
//! encoder backwards; the |A⟩ = |0⟩ + e^{iπ/4}|1⟩ state by running the
//! 15-qubit Reed-Muller encoder backwards. Distilled states feed the
//! teleported-rotation gadgets that complete the universal gate set.

pub mod reed_muller;
pub mod rotation;
pub mod scaling;
pub mod steane;

use crate::pauli::CliffordGate;
use crate::statevector::{Gate, StateVector};
use crate::Result;

/// A gate of an encoding circuit (all Clifford, all self-inverse).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncGate {
    H(usize),
    Cnot { control: usize, target: usize },
}

impl EncGate {
    pub fn to_statevector_gate(self) -> Gate {
        match self {
            EncGate::H(k) => Gate::H(k),
            EncGate::Cnot { control, target } => Gate::Cnot { control, target },
        }
    }

    pub fn to_clifford_gate(self) -> CliffordGate {
        match self {
            EncGate::H(k) => CliffordGate::H(k),
            EncGate::Cnot { control, target } => CliffordGate::Cnot { control, target },
        }
    }
}

/// The CSS fan-out encoder: fan the input wire across the logical-X support,
/// then for every X generator prepare its pivot with H and fan it across the
/// rest of its support. Gates are returned in application order.
pub(crate) fn css_encoder(
    input: usize,
    logical_x_support: &[usize],
    x_generators: &[(usize, Vec<usize>)], // (pivot, full support)
) -> Vec<EncGate> {
    let mut gates = Vec::new();
    for &k in logical_x_support {
        if k != input {
            gates.push(EncGate::Cnot { control: input, target: k });
        }
    }
    for (pivot, support) in x_generators {
        gates.push(EncGate::H(*pivot));
        for &k in support {
            if k != *pivot {
                gates.push(EncGate::Cnot { control: *pivot, target: k });
            }
        }
    }
    gates
}

pub(crate) fn apply_gates(sv: &mut StateVector, gates: &[EncGate]) -> Result<()> {
    for g in gates {
        sv.apply(g.to_statevector_gate())?;
    }
    Ok(())
}

/// The decoder is the encoder reversed (every gate is self-inverse).
pub(crate) fn reversed(gates: &[EncGate]) -> Vec<EncGate> {
    gates.iter().rev().copied().collect()
}
