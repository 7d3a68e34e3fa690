//! Slow reference implementations used by the test-suite.
//!
//! Everything in here trades speed for obviousness and stays independent of
//! the fast paths it is used to check.

use crate::lattice::{PlanarLattice, SyndKind};

/// Minimum weight over all representatives of the logical operator of `kind`,
/// found by exhaustive enumeration of stabilizer products. Only feasible for
/// small lattices (≤ 64 data qubits, ≤ 20 same-type stabilizers).
pub fn min_logical_weight(lattice: &PlanarLattice, kind: SyndKind) -> usize {
    assert!(lattice.n_data <= 64);
    let to_mask = |support: &[usize]| -> u64 {
        support.iter().fold(0u64, |m, &q| m | (1u64 << q))
    };
    let (logical, stabs): (u64, Vec<u64>) = match kind {
        SyndKind::Z => (
            to_mask(&lattice.logical_z),
            lattice.z_stabs.iter().map(|s| to_mask(&s.support)).collect(),
        ),
        SyndKind::X => (
            to_mask(&lattice.logical_x),
            lattice.x_stabs.iter().map(|s| to_mask(&s.support)).collect(),
        ),
    };
    assert!(stabs.len() <= 20, "exhaustive search too large");
    let mut best = logical.count_ones();
    for subset in 1u64..(1u64 << stabs.len()) {
        let mut rep = logical;
        let mut s = subset;
        while s != 0 {
            let i = s.trailing_zeros() as usize;
            rep ^= stabs[i];
            s &= s - 1;
        }
        best = best.min(rep.count_ones());
    }
    best as usize
}

/// Exhaustive minimum-weight perfect matching by recursive pairing.
///
/// `weight[i][j]` of `None` means no edge. Returns the minimum total weight
/// and the lexicographically smallest pair set among the minima, or `None`
/// when no perfect matching exists.
pub fn brute_force_matching(weight: &[Vec<Option<i64>>]) -> Option<(i64, Vec<(usize, usize)>)> {
    let n = weight.len();
    if n % 2 != 0 {
        return None;
    }
    let mut used = vec![false; n];
    let mut current = Vec::new();
    let mut best: Option<(i64, Vec<(usize, usize)>)> = None;
    recurse(weight, &mut used, &mut current, 0, &mut best);
    best
}

fn recurse(
    weight: &[Vec<Option<i64>>],
    used: &mut [bool],
    current: &mut Vec<(usize, usize)>,
    acc: i64,
    best: &mut Option<(i64, Vec<(usize, usize)>)>,
) {
    let n = used.len();
    let first = match (0..n).find(|&i| !used[i]) {
        Some(i) => i,
        None => {
            let candidate = (acc, current.clone());
            let better = match best {
                None => true,
                Some((bw, bp)) => candidate.0 < *bw || (candidate.0 == *bw && candidate.1 < *bp),
            };
            if better {
                *best = Some(candidate);
            }
            return;
        }
    };
    used[first] = true;
    for j in (first + 1)..n {
        if used[j] {
            continue;
        }
        if let Some(w) = weight[first][j] {
            used[j] = true;
            current.push((first, j));
            recurse(weight, used, current, acc + w, best);
            current.pop();
            used[j] = false;
        }
    }
    used[first] = false;
}

/// Syndrome computed directly from stabilizer supports: bit `s` is set when
/// the frame anticommutes with stabilizer `s`. Independent of the extraction
/// circuitry.
pub fn direct_syndrome(
    lattice: &PlanarLattice,
    kind: SyndKind,
    x_err: &crate::bits::BitVec,
    z_err: &crate::bits::BitVec,
) -> Vec<bool> {
    let stabs = match kind {
        SyndKind::Z => &lattice.z_stabs,
        SyndKind::X => &lattice.x_stabs,
    };
    // Z stabilizers detect X errors; X stabilizers detect Z errors.
    let err = match kind {
        SyndKind::Z => x_err,
        SyndKind::X => z_err,
    };
    stabs
        .iter()
        .map(|s| s.support.iter().filter(|&&q| err.get(q)).count() % 2 == 1)
        .collect()
}

/// Full stabilizer-tableau simulation of the six-step extraction circuit,
/// syndrome ancillas included. Orders of magnitude slower than the frame but
/// exercises the genuine quantum circuit, so it independently validates both
/// the schedule and the frame propagation rules.
pub struct TableauExtraction<'a> {
    lattice: &'a PlanarLattice,
    schedule: &'a crate::lattice::ExtractionSchedule,
    tableau: crate::pauli::StabilizerTableau,
    n_total: usize,
}

impl<'a> TableauExtraction<'a> {
    /// Prepares the codespace state (all stabilizers +1, logical Z fixed to
    /// +1) with every syndrome ancilla in |0⟩.
    pub fn new(
        lattice: &'a PlanarLattice,
        schedule: &'a crate::lattice::ExtractionSchedule,
    ) -> TableauExtraction<'a> {
        use crate::pauli::{Pauli, PauliOperator, StabilizerTableau};
        let n_data = lattice.n_data;
        let n_total = n_data + lattice.z_stabs.len() + lattice.x_stabs.len();
        let mut gens = Vec::with_capacity(n_total);
        let widen = |support: &[usize], p: Pauli| -> PauliOperator {
            PauliOperator::from_support(n_total, p, support).expect("index in range")
        };
        for s in &lattice.z_stabs {
            gens.push(widen(&s.support, Pauli::Z));
        }
        for s in &lattice.x_stabs {
            gens.push(widen(&s.support, Pauli::X));
        }
        gens.push(widen(&lattice.logical_z, Pauli::Z));
        for a in n_data..n_total {
            gens.push(PauliOperator::single(n_total, a, Pauli::Z).expect("index in range"));
        }
        let tableau = StabilizerTableau::from_generators(n_total, gens)
            .expect("codespace generators are independent and commute");
        TableauExtraction { lattice, schedule, tableau, n_total }
    }

    fn synd_qubit(&self, kind: SyndKind, id: usize) -> usize {
        match kind {
            SyndKind::Z => self.lattice.n_data + id,
            SyndKind::X => self.lattice.n_data + self.lattice.z_stabs.len() + id,
        }
    }

    /// Apply a Pauli error to a data qubit.
    pub fn inject(&mut self, qubit: usize, p: crate::pauli::Pauli) {
        let op = crate::pauli::PauliOperator::single(self.n_total, qubit, p).expect("in range");
        self.tableau.apply_pauli(&op).expect("sizes match");
    }

    /// Run one noiseless extraction cycle; returns (z_reports, x_reports).
    /// All measurements must come out deterministic on a codespace state.
    pub fn run_cycle(&mut self) -> (Vec<bool>, Vec<bool>) {
        use crate::pauli::{CliffordGate, Pauli, PauliOperator};
        let mut rng = rand::rngs::mock::StepRng::new(0, 1);
        // Step 0: ancillas start in |0⟩; X ancillas are prepared in |+⟩.
        for id in 0..self.lattice.x_stabs.len() {
            let q = self.synd_qubit(SyndKind::X, id);
            self.tableau.apply_gate(CliffordGate::H(q)).unwrap();
        }
        // Steps 1-4: CNOT layers.
        for layer in &self.schedule.layers {
            for c in layer {
                let sq = self.synd_qubit(c.kind, c.synd);
                let gate = match c.kind {
                    SyndKind::Z => CliffordGate::Cnot { control: c.data, target: sq },
                    SyndKind::X => CliffordGate::Cnot { control: sq, target: c.data },
                };
                self.tableau.apply_gate(gate).unwrap();
            }
        }
        // Step 5: read each ancilla in its basis, then reset it to |0⟩.
        let mut z_reports = Vec::with_capacity(self.lattice.z_stabs.len());
        for id in 0..self.lattice.z_stabs.len() {
            let q = self.synd_qubit(SyndKind::Z, id);
            let op = PauliOperator::single(self.n_total, q, Pauli::Z).unwrap();
            let (outcome, det) = self.tableau.measure(&op, None, &mut rng).unwrap();
            assert!(det, "Z syndrome {id} measurement not deterministic");
            z_reports.push(outcome == -1);
            if outcome == -1 {
                let x = PauliOperator::single(self.n_total, q, Pauli::X).unwrap();
                self.tableau.apply_pauli(&x).unwrap();
            }
        }
        let mut x_reports = Vec::with_capacity(self.lattice.x_stabs.len());
        for id in 0..self.lattice.x_stabs.len() {
            let q = self.synd_qubit(SyndKind::X, id);
            let op = PauliOperator::single(self.n_total, q, Pauli::X).unwrap();
            let (outcome, det) = self.tableau.measure(&op, None, &mut rng).unwrap();
            assert!(det, "X syndrome {id} measurement not deterministic");
            x_reports.push(outcome == -1);
            // Return the ancilla to |0⟩: it is in |±⟩, so H then conditional X.
            self.tableau.apply_gate(CliffordGate::H(q)).unwrap();
            if outcome == -1 {
                let x = PauliOperator::single(self.n_total, q, Pauli::X).unwrap();
                self.tableau.apply_pauli(&x).unwrap();
            }
        }
        (z_reports, x_reports)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_small_cases() {
        // Triangle plus one: nodes 0-3, perfect matchings: (01)(23), (02)(13), (03)(12)
        let inf = None;
        let w = vec![
            vec![inf, Some(1), Some(4), Some(3)],
            vec![Some(1), inf, Some(2), Some(2)],
            vec![Some(4), Some(2), inf, Some(5)],
            vec![Some(3), Some(2), Some(5), inf],
        ];
        let (total, pairs) = brute_force_matching(&w).unwrap();
        // (01)+(23) = 6, (02)+(13) = 6, (03)+(12) = 5
        assert_eq!((total, pairs), (5, vec![(0, 3), (1, 2)]));
    }

    #[test]
    fn brute_force_respects_missing_edges() {
        let w = vec![
            vec![None, None, Some(1), None],
            vec![None, None, None, Some(1)],
            vec![Some(1), None, None, None],
            vec![None, Some(1), None, None],
        ];
        let (total, pairs) = brute_force_matching(&w).unwrap();
        assert_eq!(total, 2);
        assert_eq!(pairs, vec![(0, 2), (1, 3)]);
        let w2 = vec![vec![None, None], vec![None, None]];
        assert!(brute_force_matching(&w2).is_none());
    }
}
