//! Tableau-level laboratory for defect-based logical qubits.
//!
//! The lab runs on an all-smooth planar patch whose unique stabilizer state
//! is tracked exactly. A logical qubit is a pair of defects — stabilizers
//! deliberately left unenforced. Smooth qubits pair two face defects: X_L is
//! a chain of X's connecting them, Z_L a ring of Z's around either defect
//! (the two rings are equivalent because their product, the pair's gauge
//! operator, stays enforced at +1). Rough qubits are the dual construction
//! on vertices.
//!
//! Every operation is a sequence of tableau measurements plus Pauli
//! corrections chosen so that all enforced stabilizers return to +1 and
//! tracked logical operators keep their signs. Noise is out of scope here;
//! the Monte Carlo machinery covers the static code.

pub mod injection;
pub mod script;

use crate::lattice::{PlanarLattice, SyndKind};
use crate::pauli::{Pauli, PauliOperator, StabilizerTableau};
use crate::{Result, SimError};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

/// Face or vertex grid coordinates.
pub type SitePos = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefectKind {
    /// Face defects; X_L chain, Z_L ring.
    Smooth,
    /// Vertex defects; Z_L chain, X_L ring.
    Rough,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QubitId(pub usize);

/// Logical measurement basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    X,
    Z,
}

#[derive(Debug, Clone)]
pub struct LogicalQubit {
    pub kind: DefectKind,
    pub regions: [BTreeSet<SitePos>; 2],
    pub x_l: PauliOperator,
    pub z_l: PauliOperator,
    /// Product of the two defect rings; enforced at +1 by construction.
    pub gauge: PauliOperator,
}

/// The conjugation images of a braided CNOT, for verification against the
/// CNOT relations (smooth = control, rough = target).
#[derive(Debug, Clone)]
pub struct BraidImages {
    pub smooth_x: PauliOperator,
    pub smooth_z: PauliOperator,
    pub rough_x: PauliOperator,
    pub rough_z: PauliOperator,
}

pub struct DefectLattice {
    pub lattice: PlanarLattice,
    pub tableau: StabilizerTableau,
    z_enabled: Vec<bool>,
    x_enabled: Vec<bool>,
    /// Qubits measured out of the code (defect interiors), with the basis
    /// they were projected into.
    removed: std::collections::BTreeMap<usize, Pauli>,
    qubits: Vec<Option<LogicalQubit>>,
    rng: ChaCha8Rng,
    w: usize,
    h: usize,
}

impl DefectLattice {
    /// All-smooth w×h-face lattice initialized to the unique stabilizer state.
    pub fn new(w: usize, h: usize, seed: u64) -> Result<Self> {
        let lattice = PlanarLattice::all_smooth(w, h)?;
        let n = lattice.n_data;
        let mut gens = Vec::with_capacity(n);
        for s in &lattice.z_stabs {
            gens.push(PauliOperator::from_support(n, Pauli::Z, &s.support)?);
        }
        // The product of all vertex stabilizers is the identity, so one is
        // dropped from the tableau (it stays enforced implicitly).
        for s in lattice.x_stabs.iter().take(lattice.x_stabs.len() - 1) {
            gens.push(PauliOperator::from_support(n, Pauli::X, &s.support)?);
        }
        let tableau = StabilizerTableau::from_generators(n, gens)
            .map_err(|e| SimError::InvalidTableau(format!("lattice ground state: {e}")))?;
        Ok(DefectLattice {
            z_enabled: vec![true; lattice.z_stabs.len()],
            x_enabled: vec![true; lattice.x_stabs.len()],
            removed: Default::default(),
            qubits: Vec::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            w,
            h,
            lattice,
            tableau,
        })
    }

    pub fn n_data(&self) -> usize {
        self.lattice.n_data
    }

    pub fn qubit(&self, id: QubitId) -> Result<&LogicalQubit> {
        self.qubits
            .get(id.0)
            .and_then(|q| q.as_ref())
            .ok_or_else(|| SimError::BadDefectOp(format!("no live logical qubit {id:?}")))
    }

    pub fn live_qubits(&self) -> usize {
        self.qubits.iter().filter(|q| q.is_some()).count()
    }

    fn face_op(&self, pos: SitePos) -> PauliOperator {
        let s = &self.lattice.z_stabs[self.lattice.z_id(pos.0, pos.1)];
        PauliOperator::from_support(self.n_data(), Pauli::Z, &s.support).expect("valid face")
    }

    fn vertex_op(&self, pos: SitePos) -> PauliOperator {
        let s = &self.lattice.x_stabs[self.lattice.x_id(pos.0, pos.1)];
        PauliOperator::from_support(self.n_data(), Pauli::X, &s.support).expect("valid vertex")
    }

    fn site_op(&self, kind: DefectKind, pos: SitePos) -> PauliOperator {
        match kind {
            DefectKind::Smooth => self.face_op(pos),
            DefectKind::Rough => self.vertex_op(pos),
        }
    }

    /// Ring operator of a defect region: product of its site stabilizers.
    fn region_ring(&self, kind: DefectKind, region: &BTreeSet<SitePos>) -> PauliOperator {
        let mut op = PauliOperator::identity(self.n_data());
        for &pos in region {
            op = op.multiply(&self.site_op(kind, pos)).expect("same-type stabilizers commute");
        }
        op
    }

    /// Currently enforced stabilizers plus the pair gauges.
    fn enforced_group(&self) -> Vec<PauliOperator> {
        let mut ops = Vec::new();
        for (i, s) in self.lattice.z_stabs.iter().enumerate() {
            if self.z_enabled[i] {
                ops.push(PauliOperator::from_support(self.n_data(), Pauli::Z, &s.support).unwrap());
            }
        }
        for (i, s) in self.lattice.x_stabs.iter().enumerate() {
            if self.x_enabled[i] {
                ops.push(PauliOperator::from_support(self.n_data(), Pauli::X, &s.support).unwrap());
            }
        }
        for q in self.qubits.iter().flatten() {
            ops.push(q.gauge.clone());
        }
        // Defect-interior qubits sit in known product states.
        for (&q, &basis) in &self.removed {
            ops.push(PauliOperator::single(self.n_data(), q, basis).unwrap());
        }
        ops
    }

    /// Degree-of-freedom bookkeeping: data qubits − rank(enforced ∪ gauges)
    /// must equal the number of live logical qubits.
    pub fn check_dof(&self) -> Result<()> {
        let rank = crate::pauli::symplectic_rank(&self.enforced_group());
        let deficit = self.n_data() - rank;
        if deficit != self.live_qubits() {
            return Err(SimError::BadDefectOp(format!(
                "rank deficit {deficit} != {} live logical qubits",
                self.live_qubits()
            )));
        }
        Ok(())
    }

    /// Every enforced stabilizer must sit at +1.
    pub fn check_enforced_clean(&self) -> Result<()> {
        for (i, s) in self.lattice.z_stabs.iter().enumerate() {
            if self.z_enabled[i] {
                let op = PauliOperator::from_support(self.n_data(), Pauli::Z, &s.support)?;
                if self.tableau.expectation(&op) != Some(1) {
                    return Err(SimError::BadDefectOp(format!("face {i} not at +1")));
                }
            }
        }
        for (i, s) in self.lattice.x_stabs.iter().enumerate() {
            if self.x_enabled[i] {
                let op = PauliOperator::from_support(self.n_data(), Pauli::X, &s.support)?;
                if self.tableau.expectation(&op) != Some(1) {
                    return Err(SimError::BadDefectOp(format!("vertex {i} not at +1")));
                }
            }
        }
        Ok(())
    }

    fn face_in_bounds_interior(&self, pos: SitePos) -> bool {
        pos.0 >= 1 && pos.0 + 1 < self.h && pos.1 >= 1 && pos.1 + 1 < self.w
    }

    fn vertex_in_bounds_interior(&self, pos: SitePos) -> bool {
        pos.0 >= 1 && pos.0 < self.h && pos.1 >= 1 && pos.1 < self.w
    }

    fn site_free(&self, kind: DefectKind, pos: SitePos) -> bool {
        match kind {
            DefectKind::Smooth => self.z_enabled[self.lattice.z_id(pos.0, pos.1)],
            DefectKind::Rough => self.x_enabled[self.lattice.x_id(pos.0, pos.1)],
        }
    }

    fn set_site(&mut self, kind: DefectKind, pos: SitePos, enabled: bool) {
        match kind {
            DefectKind::Smooth => {
                let id = self.lattice.z_id(pos.0, pos.1);
                self.z_enabled[id] = enabled;
            }
            DefectKind::Rough => {
                let id = self.lattice.x_id(pos.0, pos.1);
                self.x_enabled[id] = enabled;
            }
        }
    }

    /// Edge between two adjacent faces, if any.
    fn edge_between_faces(&self, a: SitePos, b: SitePos) -> Option<usize> {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if lo.0 == hi.0 && lo.1 + 1 == hi.1 {
            Some(self.lattice.vert(lo.0, hi.1))
        } else if lo.1 == hi.1 && lo.0 + 1 == hi.0 {
            Some(self.lattice.horiz(hi.0, lo.1))
        } else {
            None
        }
    }

    /// Edge between two adjacent vertices, if any.
    fn edge_between_vertices(&self, a: SitePos, b: SitePos) -> Option<usize> {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if lo.0 == hi.0 && lo.1 + 1 == hi.1 {
            Some(self.lattice.horiz(lo.0, lo.1))
        } else if lo.1 == hi.1 && lo.0 + 1 == hi.0 {
            Some(self.lattice.vert(lo.0, lo.1))
        } else {
            None
        }
    }

    fn measure_op(&mut self, op: &PauliOperator) -> Result<i8> {
        let (outcome, _) = self.tableau.measure(op, None, &mut self.rng)?;
        Ok(outcome)
    }

    fn apply_pauli_on(&mut self, p: Pauli, qubit: usize) -> Result<()> {
        let op = PauliOperator::single(self.n_data(), qubit, p)?;
        self.tableau.apply_pauli(&op)
    }

    /// Create a smooth (double face-defect) logical qubit; state |0_L⟩.
    pub fn create_smooth_qubit(&mut self, region1: &[SitePos], region2: &[SitePos]) -> Result<QubitId> {
        self.create_qubit(DefectKind::Smooth, region1, region2)
    }

    /// Create a rough (double vertex-defect) logical qubit; state |+_L⟩.
    pub fn create_rough_qubit(&mut self, region1: &[SitePos], region2: &[SitePos]) -> Result<QubitId> {
        self.create_qubit(DefectKind::Rough, region1, region2)
    }

    fn create_qubit(
        &mut self,
        kind: DefectKind,
        region1: &[SitePos],
        region2: &[SitePos],
    ) -> Result<QubitId> {
        let r1: BTreeSet<SitePos> = region1.iter().copied().collect();
        let r2: BTreeSet<SitePos> = region2.iter().copied().collect();
        if r1.is_empty() || r2.is_empty() {
            return Err(SimError::BadDefectOp("empty defect region".into()));
        }
        if !r1.is_disjoint(&r2) {
            return Err(SimError::BadDefectOp("overlapping defect regions".into()));
        }
        for &pos in r1.iter().chain(&r2) {
            let interior = match kind {
                DefectKind::Smooth => self.face_in_bounds_interior(pos),
                DefectKind::Rough => self.vertex_in_bounds_interior(pos),
            };
            if !interior {
                return Err(SimError::BadDefectOp(format!(
                    "region site {pos:?} touches the lattice boundary"
                )));
            }
            if !self.site_free(kind, pos) {
                return Err(SimError::BadDefectOp(format!("site {pos:?} already a defect")));
            }
        }
        for region in [&r1, &r2] {
            self.carve_region(kind, region)?;
        }
        let (x_l, z_l) = self.fresh_logical_ops(kind, &r1, &r2)?;
        let gauge = self
            .region_ring(kind, &r1)
            .multiply(&self.region_ring(kind, &r2))
            .expect("rings commute");
        self.qubits.push(Some(LogicalQubit { kind, regions: [r1, r2], x_l, z_l, gauge }));
        Ok(QubitId(self.qubits.len() - 1))
    }

    /// Measure out the interior of a defect region, fix the signs of the
    /// truncated stabilizers along its border, and stop enforcing the region.
    fn carve_region(&mut self, kind: DefectKind, region: &BTreeSet<SitePos>) -> Result<()> {
        let interior_edges = self.region_interior_edges(kind, region);
        let basis = match kind {
            DefectKind::Smooth => Pauli::X,
            DefectKind::Rough => Pauli::Z,
        };
        for &q in &interior_edges {
            let op = PauliOperator::single(self.n_data(), q, basis)?;
            self.measure_op(&op)?;
        }
        for &pos in region {
            self.set_site(kind, pos, false);
        }
        for pos in self.fully_interior_dual_sites(kind, region) {
            match kind {
                DefectKind::Smooth => {
                    let id = self.lattice.x_id(pos.0, pos.1);
                    self.x_enabled[id] = false;
                }
                DefectKind::Rough => {
                    let id = self.lattice.z_id(pos.0, pos.1);
                    self.z_enabled[id] = false;
                }
            }
        }
        // Truncated border stabilizers inherit the measured qubits' signs; a
        // single-qubit correction on one interior edge fixes each negative.
        for pos in self.region_border_dual_sites(kind, region) {
            let (op, enabled) = match kind {
                DefectKind::Smooth => {
                    (self.vertex_op(pos), self.x_enabled[self.lattice.x_id(pos.0, pos.1)])
                }
                DefectKind::Rough => {
                    (self.face_op(pos), self.z_enabled[self.lattice.z_id(pos.0, pos.1)])
                }
            };
            if !enabled {
                continue;
            }
            if self.tableau.expectation(&op) == Some(-1) {
                let fix_edge = op
                    .x_bits()
                    .iter_ones()
                    .chain(op.z_bits().iter_ones())
                    .find(|q| interior_edges.contains(q))
                    .ok_or_else(|| {
                        SimError::BadDefectOp(
                            "negative border stabilizer with no interior edge".into(),
                        )
                    })?;
                let fix = match kind {
                    DefectKind::Smooth => Pauli::Z,
                    DefectKind::Rough => Pauli::X,
                };
                self.apply_pauli_on(fix, fix_edge)?;
            }
        }
        for q in interior_edges {
            self.removed.insert(q, basis);
        }
        Ok(())
    }

    /// Edges interior to a region (between two region sites).
    fn region_interior_edges(&self, kind: DefectKind, region: &BTreeSet<SitePos>) -> BTreeSet<usize> {
        let mut edges = BTreeSet::new();
        for &a in region {
            for &b in region {
                if a < b {
                    let e = match kind {
                        DefectKind::Smooth => self.edge_between_faces(a, b),
                        DefectKind::Rough => self.edge_between_vertices(a, b),
                    };
                    if let Some(q) = e {
                        edges.insert(q);
                    }
                }
            }
        }
        edges
    }

    /// Dual sites (vertices for smooth regions, faces for rough) whose entire
    /// support lies on interior edges; their stabilizers stop being enforced.
    fn fully_interior_dual_sites(&self, kind: DefectKind, region: &BTreeSet<SitePos>) -> Vec<SitePos> {
        let interior = self.region_interior_edges(kind, region);
        let mut out = Vec::new();
        match kind {
            DefectKind::Smooth => {
                for s in &self.lattice.x_stabs {
                    if !s.support.is_empty() && s.support.iter().all(|q| interior.contains(q)) {
                        out.push(s.pos);
                    }
                }
            }
            DefectKind::Rough => {
                for s in &self.lattice.z_stabs {
                    if !s.support.is_empty() && s.support.iter().all(|q| interior.contains(q)) {
                        out.push(s.pos);
                    }
                }
            }
        }
        out
    }

    /// Dual sites touching at least one interior edge.
    fn region_border_dual_sites(&self, kind: DefectKind, region: &BTreeSet<SitePos>) -> Vec<SitePos> {
        let interior = self.region_interior_edges(kind, region);
        let mut out = Vec::new();
        match kind {
            DefectKind::Smooth => {
                for s in &self.lattice.x_stabs {
                    if s.support.iter().any(|q| interior.contains(q)) {
                        out.push(s.pos);
                    }
                }
            }
            DefectKind::Rough => {
                for s in &self.lattice.z_stabs {
                    if s.support.iter().any(|q| interior.contains(q)) {
                        out.push(s.pos);
                    }
                }
            }
        }
        out
    }

    /// Canonical X_L/Z_L for a fresh defect pair.
    fn fresh_logical_ops(
        &self,
        kind: DefectKind,
        r1: &BTreeSet<SitePos>,
        r2: &BTreeSet<SitePos>,
    ) -> Result<(PauliOperator, PauliOperator)> {
        let a = *r1.iter().next().unwrap();
        let b = *r2.iter().next().unwrap();
        match kind {
            DefectKind::Smooth => {
                let path = self.lattice.correction_path(
                    SyndKind::Z,
                    self.lattice.z_id(a.0, a.1),
                    self.lattice.z_id(b.0, b.1),
                );
                let x_l = PauliOperator::from_support(self.n_data(), Pauli::X, &path)?;
                let z_l = self.region_ring(kind, r1);
                Ok((x_l, z_l))
            }
            DefectKind::Rough => {
                let path = self.lattice.correction_path(
                    SyndKind::X,
                    self.lattice.x_id(a.0, a.1),
                    self.lattice.x_id(b.0, b.1),
                );
                let z_l = PauliOperator::from_support(self.n_data(), Pauli::Z, &path)?;
                let x_l = self.region_ring(kind, r1);
                Ok((x_l, z_l))
            }
        }
    }

    /// Non-destructive logical measurement of a tracked operator.
    pub fn measure_logical(&mut self, id: QubitId, basis: Basis) -> Result<i8> {
        let op = match basis {
            Basis::X => self.qubit(id)?.x_l.clone(),
            Basis::Z => self.qubit(id)?.z_l.clone(),
        };
        self.measure_op(&op)
    }

    /// Deterministic value of a tracked logical, if the state fixes one.
    pub fn expectation_logical(&self, id: QubitId, basis: Basis) -> Result<Option<i8>> {
        let q = self.qubit(id)?;
        let op = match basis {
            Basis::X => &q.x_l,
            Basis::Z => &q.z_l,
        };
        Ok(self.tableau.expectation(op))
    }

    /// Deterministic value of an arbitrary operator, if fixed by the state.
    pub fn expectation(&self, op: &PauliOperator) -> Option<i8> {
        self.tableau.expectation(op)
    }

    pub fn apply_logical(&mut self, id: QubitId, basis: Basis) -> Result<()> {
        let op = match basis {
            Basis::X => self.qubit(id)?.x_l.clone(),
            Basis::Z => self.qubit(id)?.z_l.clone(),
        };
        self.tableau.apply_pauli(&op)
    }

    /// Force a logical qubit into a known basis state by measure-and-correct.
    pub fn prepare(&mut self, id: QubitId, basis: Basis, sign: i8) -> Result<()> {
        let outcome = self.measure_logical(id, basis)?;
        if outcome != sign {
            let flip = match basis {
                Basis::X => Basis::Z,
                Basis::Z => Basis::X,
            };
            self.apply_logical(id, flip)?;
        }
        Ok(())
    }

    /// Move one single-site defect of a qubit to an adjacent free site.
    pub fn move_defect(&mut self, id: QubitId, defect: usize, to: SitePos) -> Result<()> {
        if defect > 1 {
            return Err(SimError::BadDefectOp("defect index must be 0 or 1".into()));
        }
        let (kind, from) = {
            let q = self.qubit(id)?;
            if q.regions[defect].len() != 1 {
                return Err(SimError::BadDefectOp("only single-site defects can be moved".into()));
            }
            (q.kind, *q.regions[defect].iter().next().unwrap())
        };
        let interior_ok = match kind {
            DefectKind::Smooth => self.face_in_bounds_interior(to),
            DefectKind::Rough => self.vertex_in_bounds_interior(to),
        };
        if !interior_ok {
            return Err(SimError::BadDefectOp(format!("target {to:?} touches the boundary")));
        }
        if !self.site_free(kind, to) {
            return Err(SimError::BadDefectOp(format!(
                "target {to:?} is another defect (the move would pinch a logical)"
            )));
        }
        let q_edge = match kind {
            DefectKind::Smooth => self.edge_between_faces(from, to),
            DefectKind::Rough => self.edge_between_vertices(from, to),
        }
        .ok_or_else(|| SimError::BadDefectOp(format!("{from:?} and {to:?} are not adjacent")))?;
        if self.removed.contains_key(&q_edge) {
            return Err(SimError::BadDefectOp("connecting edge was measured out".into()));
        }

        match kind {
            DefectKind::Smooth => self.move_smooth_step(id, defect, from, to, q_edge),
            DefectKind::Rough => self.move_rough_step(id, defect, from, to, q_edge),
        }
    }

    fn move_smooth_step(
        &mut self,
        id: QubitId,
        defect: usize,
        from: SitePos,
        to: SitePos,
        q: usize,
    ) -> Result<()> {
        // Extend: measure the connecting qubit in X. A −1 outcome is reset to
        // +X by the ring of the target face (Z on the measured qubit plus the
        // chain completing it around the new defect boundary), which commutes
        // with every enforced stabilizer and every through-passing chain.
        let x_q = PauliOperator::single(self.n_data(), q, Pauli::X)?;
        let s = self.measure_op(&x_q)?;
        if s == -1 {
            let ring = self.face_op(to);
            self.tableau.apply_pauli(&ring)?;
        }
        self.set_site(DefectKind::Smooth, to, false);
        // Shrink: re-measure the vacated face, fix its sign with X on q.
        let old_face = self.face_op(from);
        let s2 = self.measure_op(&old_face)?;
        if s2 == -1 {
            self.apply_pauli_on(Pauli::X, q)?;
        }
        self.set_site(DefectKind::Smooth, from, true);

        // Re-terminate the attached X_L chain and re-anchor the ring.
        let new_ring = self.face_op(to);
        let x_q = PauliOperator::single(self.n_data(), q, Pauli::X)?;
        {
            let qubit = self.qubits[id.0].as_mut().expect("checked live");
            if !qubit.x_l.commutes_with(&old_face) {
                qubit.x_l = qubit.x_l.multiply(&x_q).expect("X-type operators commute");
            }
            qubit.regions[defect].clear();
            qubit.regions[defect].insert(to);
            if defect == 0 {
                qubit.z_l = new_ring;
            }
        }
        self.refresh_gauge(id);
        Ok(())
    }

    fn move_rough_step(
        &mut self,
        id: QubitId,
        defect: usize,
        from: SitePos,
        to: SitePos,
        q: usize,
    ) -> Result<()> {
        let z_q = PauliOperator::single(self.n_data(), q, Pauli::Z)?;
        let s = self.measure_op(&z_q)?;
        if s == -1 {
            let ring = self.vertex_op(to);
            self.tableau.apply_pauli(&ring)?;
        }
        self.set_site(DefectKind::Rough, to, false);
        let old_vertex = self.vertex_op(from);
        let s2 = self.measure_op(&old_vertex)?;
        if s2 == -1 {
            self.apply_pauli_on(Pauli::Z, q)?;
        }
        self.set_site(DefectKind::Rough, from, true);

        let new_ring = self.vertex_op(to);
        let z_q = PauliOperator::single(self.n_data(), q, Pauli::Z)?;
        {
            let qubit = self.qubits[id.0].as_mut().expect("checked live");
            if !qubit.z_l.commutes_with(&old_vertex) {
                qubit.z_l = qubit.z_l.multiply(&z_q).expect("Z-type operators commute");
            }
            qubit.regions[defect].clear();
            qubit.regions[defect].insert(to);
            if defect == 0 {
                qubit.x_l = new_ring;
            }
        }
        self.refresh_gauge(id);
        Ok(())
    }

    fn refresh_gauge(&mut self, id: QubitId) {
        let q = self.qubits[id.0].as_ref().expect("live");
        let r0 = self.region_ring(q.kind, &q.regions[0]);
        let r1 = self.region_ring(q.kind, &q.regions[1]);
        self.qubits[id.0].as_mut().unwrap().gauge = r0.multiply(&r1).expect("rings commute");
    }

    /// Braided CNOT: walk one smooth defect around a closed face path that
    /// encloses exactly one rough defect of the target. Smooth = control,
    /// rough = target. Returns the conjugation images of the tracked
    /// logicals under the implemented CNOT.
    pub fn braid_cnot(
        &mut self,
        smooth: QubitId,
        rough: QubitId,
        path: &[SitePos],
    ) -> Result<BraidImages> {
        if self.qubit(smooth)?.kind != DefectKind::Smooth
            || self.qubit(rough)?.kind != DefectKind::Rough
        {
            return Err(SimError::BadDefectOp(
                "braid_cnot needs a smooth control and a rough target".into(),
            ));
        }
        if path.len() < 4 || path.first() != path.last() {
            return Err(SimError::BadDefectOp(
                "braid path must be a closed face loop returning to its start".into(),
            ));
        }
        let start = *self.qubit(smooth)?.regions[1].iter().next().ok_or_else(|| {
            SimError::BadDefectOp("braids move the second defect of the smooth pair".into())
        })?;
        if path[0] != start {
            return Err(SimError::BadDefectOp(format!(
                "braid path must start at the mobile defect {start:?}"
            )));
        }
        let loop_edges: Vec<usize> = path
            .windows(2)
            .map(|w| {
                self.edge_between_faces(w[0], w[1]).ok_or_else(|| {
                    SimError::BadDefectOp(format!(
                        "path faces {:?} and {:?} not adjacent",
                        w[0], w[1]
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        // The loop must enclose exactly one rough defect, belonging to the
        // target, and must not pass through any other defect site.
        let mut enclosed: Vec<(QubitId, SitePos)> = Vec::new();
        for (qi, q) in self.qubits.iter().enumerate() {
            let Some(q) = q else { continue };
            if q.kind != DefectKind::Rough {
                continue;
            }
            for &v in q.regions.iter().flatten() {
                if self.vertex_enclosed(&loop_edges, v) {
                    enclosed.push((QubitId(qi), v));
                }
            }
        }
        if enclosed.len() != 1 || enclosed[0].0 != rough {
            return Err(SimError::BadDefectOp(format!(
                "braid path must enclose exactly one rough defect of the target, found {enclosed:?}"
            )));
        }
        for &f in &path[..path.len() - 1] {
            for (qi, q) in self.qubits.iter().enumerate() {
                let Some(q) = q else { continue };
                if q.kind == DefectKind::Smooth && q.regions.iter().any(|r| r.contains(&f)) {
                    let own_start = QubitId(qi) == smooth && f == start;
                    if !own_start {
                        return Err(SimError::BadDefectOp(format!(
                            "braid path intersects a defect at {f:?}"
                        )));
                    }
                }
            }
        }
        let images = BraidImages {
            smooth_x: self
                .qubit(smooth)?
                .x_l
                .multiply(&self.qubit(rough)?.x_l)
                .expect("X-type commute"),
            smooth_z: self.qubit(smooth)?.z_l.clone(),
            rough_x: self.qubit(rough)?.x_l.clone(),
            rough_z: self
                .qubit(rough)?
                .z_l
                .multiply(&self.qubit(smooth)?.z_l)
                .expect("Z-type commute"),
        };
        for w in path.windows(2) {
            self.move_defect(smooth, 1, w[1])?;
        }
        // The dragged chain now equals the old chain times the enclosing loop
        // (the CNOT image X_s X_r up to enforced stabilizers). Re-anchor the
        // tracked operators to canonical geometric representatives of the
        // final defect configuration, so later logical measurements address
        // this qubit alone.
        {
            let q = self.qubits[smooth.0].as_ref().expect("live");
            let (x_l, z_l) = self.fresh_logical_ops(q.kind, &q.regions[0], &q.regions[1])?;
            let qm = self.qubits[smooth.0].as_mut().unwrap();
            qm.x_l = x_l;
            qm.z_l = z_l;
        }
        Ok(images)
    }

    /// Crossing-parity test: is vertex `v` enclosed by the dual loop with the
    /// given crossed-edge multiset? Counts loop edges along the straight ray
    /// from `v` to the north boundary.
    fn vertex_enclosed(&self, loop_edges: &[usize], v: SitePos) -> bool {
        let (r, c) = v;
        let mut crossings = 0;
        for i in 0..r {
            let ray_edge = self.lattice.vert(i, c);
            crossings += loop_edges.iter().filter(|&&e| e == ray_edge).count();
        }
        crossings % 2 == 1
    }

    /// Destructive logical measurement: measure, heal the defects back into
    /// the code, and retire the qubit. Only single-site defects heal.
    pub fn measure_out(&mut self, id: QubitId, basis: Basis) -> Result<i8> {
        let outcome = self.measure_logical(id, basis)?;
        let q = self.qubit(id)?.clone();
        for region in &q.regions {
            if region.len() != 1 {
                return Err(SimError::BadDefectOp("can only heal single-site defects".into()));
            }
        }
        match q.kind {
            DefectKind::Smooth => {
                for region in &q.regions {
                    let pos = *region.iter().next().unwrap();
                    let op = self.face_op(pos);
                    let s = self.measure_op(&op)?;
                    if s == -1 {
                        // An X chain to the north boundary flips only this
                        // face among the enforced stabilizers.
                        for e in self.face_to_boundary_chain(pos) {
                            self.apply_pauli_on(Pauli::X, e)?;
                        }
                    }
                    self.set_site(DefectKind::Smooth, pos, true);
                }
            }
            DefectKind::Rough => {
                // Vertex signs pair up (the product of all vertex stabilizers
                // is the identity), so measure both then connect negatives.
                let mut negatives = Vec::new();
                for region in &q.regions {
                    let pos = *region.iter().next().unwrap();
                    let op = self.vertex_op(pos);
                    if self.measure_op(&op)? == -1 {
                        negatives.push(pos);
                    }
                    self.set_site(DefectKind::Rough, pos, true);
                }
                if negatives.len() == 1 {
                    return Err(SimError::BadDefectOp(
                        "unpaired negative vertex while healing".into(),
                    ));
                }
                if negatives.len() == 2 {
                    let path = self.lattice.correction_path(
                        SyndKind::X,
                        self.lattice.x_id(negatives[0].0, negatives[0].1),
                        self.lattice.x_id(negatives[1].0, negatives[1].1),
                    );
                    for e in path {
                        self.apply_pauli_on(Pauli::Z, e)?;
                    }
                }
            }
        }
        self.qubits[id.0] = None;
        Ok(outcome)
    }

    /// Dual path from a face straight north to the lattice boundary.
    fn face_to_boundary_chain(&self, f: SitePos) -> Vec<usize> {
        let (i, j) = f;
        (0..=i).rev().map(|r| self.lattice.horiz(r, j)).collect()
    }
}

/// Geometry for a same-type CNOT between two smooth qubits.
#[derive(Debug, Clone)]
pub struct CnotLayout {
    /// Two free vertex sites for the rough intermediate qubit.
    pub rough_sites: [SitePos; 2],
    /// Two free face sites for the smooth output ancilla.
    pub smooth_sites: [SitePos; 2],
    /// Closed face loop from the target's mobile defect around rough_sites[0].
    pub path_target: Vec<SitePos>,
    /// Closed face loop from the control's mobile defect around rough_sites[0].
    pub path_control: Vec<SitePos>,
    /// Closed face loop from the output ancilla's mobile defect around rough_sites[0].
    pub path_output: Vec<SitePos>,
}

impl DefectLattice {
    /// Logical CNOT between two smooth qubits via a rough intermediate:
    /// teleport the target into the rough qubit (M_X byproduct), braid the
    /// control around it, teleport back onto a fresh smooth qubit (M_Z
    /// byproduct), and apply the corrective (Z⊗Z)^{M_X} and X^{M_Z}
    /// immediately. The target id ends up on the fresh smooth pair.
    pub fn same_type_cnot(
        &mut self,
        control: QubitId,
        target: QubitId,
        layout: &CnotLayout,
    ) -> Result<()> {
        for q in [control, target] {
            if self.qubit(q)?.kind != DefectKind::Smooth {
                return Err(SimError::BadDefectOp("same_type_cnot needs smooth qubits".into()));
            }
        }
        // Rough intermediate in |0_L⟩.
        let r = self.create_rough_qubit(&[layout.rough_sites[0]], &[layout.rough_sites[1]])?;
        self.prepare(r, Basis::Z, 1)?;
        // CNOT(target → r), then measure the target in X: teleports the
        // target state onto r with byproduct Z^{M_X}.
        self.braid_cnot(target, r, &layout.path_target)?;
        let m_x = self.measure_out(target, Basis::X)?;
        // CNOT(control → r).
        self.braid_cnot(control, r, &layout.path_control)?;
        // Fresh smooth output in |+_L⟩, CNOT(out → r), measure r in Z:
        // teleports r onto the output with byproduct X^{M_Z}.
        let out = self.create_smooth_qubit(&[layout.smooth_sites[0]], &[layout.smooth_sites[1]])?;
        self.prepare(out, Basis::X, 1)?;
        self.braid_cnot(out, r, &layout.path_output)?;
        let m_z = self.measure_out(r, Basis::Z)?;
        // The pending Z^{M_X} commuted through the CNOT becomes (Z⊗Z)^{M_X};
        // the final teleport adds X^{M_Z} on the output.
        if m_x == -1 {
            self.apply_logical(control, Basis::Z)?;
            self.apply_logical(out, Basis::Z)?;
        }
        if m_z == -1 {
            self.apply_logical(out, Basis::X)?;
        }
        self.qubits[target.0] = self.qubits[out.0].take();
        Ok(())
    }
}

/// Geometry for the transversal-Hadamard gadget.
#[derive(Debug, Clone)]
pub struct HadamardLayout {
    /// Inclusive face rectangle (i0, i1, j0, j1) isolating the qubit.
    pub patch: (usize, usize, usize, usize),
    /// Two free face sites for the smooth ancilla used to restore the type.
    pub smooth_sites: [SitePos; 2],
    /// Closed face loop from the ancilla's mobile defect around the relocated
    /// rough defect (the first defect position shifted by (+1, +1)).
    pub restore_path: Vec<SitePos>,
}

impl DefectLattice {
    /// Transversal logical Hadamard on a smooth qubit.
    ///
    /// A ring of Z measurements isolates the patch (the ring is equivalent to
    /// the logical identity, so it reveals nothing about the qubit),
    /// transversal physical Hadamards swap face and vertex stabilizers, the
    /// half-lattice-spacing realignment is realized by an index relabeling,
    /// the surface is re-measured and corrected, and a CNOT-and-measure
    /// gadget with a fresh smooth ancilla restores the qubit type. Z_L and
    /// X_L end up interchanged: |0_L⟩ ↦ |+_L⟩ and |+_L⟩ ↦ |0_L⟩.
    pub fn transversal_hadamard(&mut self, id: QubitId, layout: &HadamardLayout) -> Result<()> {
        let q = self.qubit(id)?.clone();
        if q.kind != DefectKind::Smooth {
            return Err(SimError::BadDefectOp("transversal H starts from a smooth qubit".into()));
        }
        let (i0, i1, j0, j1) = layout.patch;
        if i0 == 0 || j0 == 0 || i1 + 2 > self.h || j1 + 2 > self.w || i0 > i1 || j0 > j1 {
            return Err(SimError::BadDefectOp("patch must be interior to the lattice".into()));
        }
        for region in &q.regions {
            if region.len() != 1 {
                return Err(SimError::BadDefectOp("single-site defects required".into()));
            }
            let &(fi, fj) = region.iter().next().unwrap();
            if fi <= i0 || fi >= i1 || fj <= j0 || fj >= j1 {
                return Err(SimError::BadDefectOp(
                    "defects must lie strictly inside the patch (ring would intersect them)".into(),
                ));
            }
        }
        for other in self.qubits.iter().flatten() {
            for &site in other.regions.iter().flatten() {
                let inside = match other.kind {
                    DefectKind::Smooth => Self::face_in_patch(site, layout.patch),
                    DefectKind::Rough => {
                        site.0 > i0 && site.0 <= i1 && site.1 > j0 && site.1 <= j1
                    }
                };
                let ours = q.regions.iter().any(|r| r.contains(&site))
                    && other.kind == DefectKind::Smooth;
                if inside && !ours {
                    return Err(SimError::BadDefectOp(
                        "another defect lies inside the Hadamard patch".into(),
                    ));
                }
            }
        }

        // 1. Fence: measure every edge crossing the patch boundary in Z.
        let fence = self.patch_fence_edges(layout.patch);
        for &e in &fence {
            let op = PauliOperator::single(self.n_data(), e, Pauli::Z)?;
            self.measure_op(&op)?;
        }
        // 2. Correct the truncated faces on both sides of the cut.
        let mut negative_inside: Vec<SitePos> = Vec::new();
        for fi in 0..self.h {
            for fj in 0..self.w {
                let face = (fi, fj);
                if !self.z_enabled[self.lattice.z_id(fi, fj)] {
                    continue;
                }
                let op = self.face_op(face);
                if self.tableau.expectation(&op) == Some(-1) {
                    if Self::face_in_patch(face, layout.patch) {
                        negative_inside.push(face);
                    } else {
                        for e in self.face_to_boundary_chain(face) {
                            self.apply_pauli_on(Pauli::X, e)?;
                        }
                    }
                }
            }
        }
        // The ring is the logical identity, so interior negatives pair up.
        if negative_inside.len() % 2 != 0 {
            return Err(SimError::BadDefectOp(
                "odd number of negative faces inside the patch".into(),
            ));
        }
        let defect_faces: BTreeSet<SitePos> =
            q.regions.iter().flat_map(|r| r.iter().copied()).collect();
        while let Some(a) = negative_inside.pop() {
            let b = negative_inside.pop().expect("even count");
            for e in self.face_path_avoiding(a, b, &defect_faces, layout.patch)? {
                self.apply_pauli_on(Pauli::X, e)?;
            }
        }

        // 3. Transversal H on the live patch qubits: every face Z stabilizer
        //    becomes a vertex X stabilizer and vice versa.
        for &e in &self.patch_live_edges(layout.patch) {
            self.tableau.apply_gate(crate::pauli::CliffordGate::H(e))?;
        }

        // 4. Realign by relabeling: horiz(r,j) ↦ vert(r, j+1) and
        //    vert(i,c) ↦ horiz(i+1, c), the diagonal half-spacing shift.
        let perm = self.half_shift_permutation(layout.patch)?;
        self.apply_permutation(&perm)?;

        // 5. The qubit is now rough, with defects at the old positions
        //    shifted by (+1, +1). Reconnect by measuring the complete surface
        //    of stabilizers once more and correcting.
        let new_regions: Vec<SitePos> = q
            .regions
            .iter()
            .map(|r| {
                let &(fi, fj) = r.iter().next().unwrap();
                (fi + 1, fj + 1)
            })
            .collect();
        for pos in &new_regions {
            self.set_site(DefectKind::Rough, *pos, false);
        }
        for fi in 0..self.h {
            for fj in 0..self.w {
                let zid = self.lattice.z_id(fi, fj);
                self.z_enabled[zid] = true;
            }
        }
        self.remeasure_and_fix(&new_regions)?;

        let r0: BTreeSet<SitePos> = [new_regions[0]].into_iter().collect();
        let r1: BTreeSet<SitePos> = [new_regions[1]].into_iter().collect();
        let (x_l, z_l) = self.fresh_logical_ops(DefectKind::Rough, &r0, &r1)?;
        let gauge = self
            .region_ring(DefectKind::Rough, &r0)
            .multiply(&self.region_ring(DefectKind::Rough, &r1))
            .expect("rings commute");
        self.qubits[id.0] =
            Some(LogicalQubit { kind: DefectKind::Rough, regions: [r0, r1], x_l, z_l, gauge });

        // 6. Restore the smooth type: fresh |+_L⟩ smooth ancilla, CNOT onto
        //    the rough qubit, measure it in Z_L, apply X_L on −1.
        let anc = self.create_smooth_qubit(&[layout.smooth_sites[0]], &[layout.smooth_sites[1]])?;
        self.prepare(anc, Basis::X, 1)?;
        self.braid_cnot(anc, id, &layout.restore_path)?;
        let m = self.measure_out(id, Basis::Z)?;
        if m == -1 {
            self.apply_logical(anc, Basis::X)?;
        }
        self.qubits[id.0] = self.qubits[anc.0].take();
        Ok(())
    }

    fn face_in_patch(face: SitePos, patch: (usize, usize, usize, usize)) -> bool {
        let (i0, i1, j0, j1) = patch;
        face.0 >= i0 && face.0 <= i1 && face.1 >= j0 && face.1 <= j1
    }

    /// Edges with exactly one adjacent face inside the patch rectangle.
    fn patch_fence_edges(&self, patch: (usize, usize, usize, usize)) -> Vec<usize> {
        let (i0, i1, j0, j1) = patch;
        let mut out = Vec::new();
        for j in j0..=j1 {
            out.push(self.lattice.horiz(i0, j));
            out.push(self.lattice.horiz(i1 + 1, j));
        }
        for i in i0..=i1 {
            out.push(self.lattice.vert(i, j0));
            out.push(self.lattice.vert(i, j1 + 1));
        }
        out
    }

    /// Edges strictly inside the patch rectangle.
    fn patch_live_edges(&self, patch: (usize, usize, usize, usize)) -> Vec<usize> {
        let (i0, i1, j0, j1) = patch;
        let mut out = Vec::new();
        for r in (i0 + 1)..=i1 {
            for j in j0..=j1 {
                out.push(self.lattice.horiz(r, j));
            }
        }
        for i in i0..=i1 {
            for c in (j0 + 1)..=j1 {
                out.push(self.lattice.vert(i, c));
            }
        }
        out
    }

    /// Index map realizing the diagonal half-shift on the patch: live patch
    /// edges map forward, displaced target sites map back onto the vacated
    /// ones in canonical order.
    fn half_shift_permutation(&self, patch: (usize, usize, usize, usize)) -> Result<Vec<usize>> {
        let (i0, i1, j0, j1) = patch;
        let n = self.n_data();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut forward: Vec<(usize, usize)> = Vec::new();
        for r in (i0 + 1)..=i1 {
            for j in j0..=j1 {
                forward.push((self.lattice.horiz(r, j), self.lattice.vert(r, j + 1)));
            }
        }
        for i in i0..=i1 {
            for c in (j0 + 1)..=j1 {
                forward.push((self.lattice.vert(i, c), self.lattice.horiz(i + 1, c)));
            }
        }
        let sources: BTreeSet<usize> = forward.iter().map(|&(s, _)| s).collect();
        let targets: BTreeSet<usize> = forward.iter().map(|&(_, t)| t).collect();
        let vacated: Vec<usize> = sources.difference(&targets).copied().collect();
        let displaced: Vec<usize> = targets.difference(&sources).copied().collect();
        if vacated.len() != displaced.len() {
            return Err(SimError::BadDefectOp("relabeling is not a bijection".into()));
        }
        for &(s, t) in &forward {
            perm[s] = t;
        }
        for (d, v) in displaced.into_iter().zip(vacated) {
            perm[d] = v;
        }
        Ok(perm)
    }

    /// Relabel the tableau's qubit indices by `perm` (old index → new index).
    fn apply_permutation(&mut self, perm: &[usize]) -> Result<()> {
        let n = self.n_data();
        let gens = self.tableau.generators().to_vec();
        let mut new_gens = Vec::with_capacity(gens.len());
        for g in &gens {
            let mut ng = PauliOperator::identity(n);
            ng.set_sign(g.sign());
            for q in 0..n {
                ng.set(perm[q], g.get(q));
            }
            new_gens.push(ng);
        }
        self.tableau = StabilizerTableau::from_generators(n, new_gens)
            .map_err(|e| SimError::InvalidTableau(format!("after relabeling: {e}")))?;
        Ok(())
    }

    /// Measure every enabled stabilizer and fix negative signs, keeping the
    /// given rough defect vertices untouched.
    fn remeasure_and_fix(&mut self, rough_defects: &[SitePos]) -> Result<()> {
        let defect_cols: BTreeSet<usize> = rough_defects.iter().map(|&(_, c)| c).collect();
        for fi in 0..self.h {
            for fj in 0..self.w {
                if !self.z_enabled[self.lattice.z_id(fi, fj)] {
                    continue;
                }
                let op = self.face_op((fi, fj));
                let s = self.measure_op(&op)?;
                if s == -1 {
                    // Straight chain to the north boundary; sidestep one
                    // column east when a defect vertex sits on the column.
                    let mut col = fj;
                    let mut chain: Vec<usize> = Vec::new();
                    if defect_cols.contains(&col) || defect_cols.contains(&(col + 1)) {
                        chain.push(self.lattice.vert(fi, col + 1));
                        col += 1;
                    }
                    chain.extend((0..=fi).rev().map(|r| self.lattice.horiz(r, col)));
                    for e in chain {
                        self.apply_pauli_on(Pauli::X, e)?;
                    }
                }
            }
        }
        let mut negative_vertices: Vec<SitePos> = Vec::new();
        for r in 0..=self.h {
            for c in 0..=self.w {
                if !self.x_enabled[self.lattice.x_id(r, c)] {
                    continue;
                }
                let op = self.vertex_op((r, c));
                let s = self.measure_op(&op)?;
                if s == -1 {
                    negative_vertices.push((r, c));
                }
            }
        }
        if negative_vertices.len() % 2 != 0 {
            return Err(SimError::BadDefectOp("odd number of negative vertices".into()));
        }
        while let Some(a) = negative_vertices.pop() {
            let b = negative_vertices.pop().expect("even count");
            for e in self.vertex_path_avoiding(a, b, rough_defects)? {
                self.apply_pauli_on(Pauli::Z, e)?;
            }
        }
        Ok(())
    }

    /// BFS dual path (X chain) between faces inside the patch avoiding the
    /// defect faces.
    fn face_path_avoiding(
        &self,
        from: SitePos,
        to: SitePos,
        avoid: &BTreeSet<SitePos>,
        patch: (usize, usize, usize, usize),
    ) -> Result<Vec<usize>> {
        let (i0, i1, j0, j1) = patch;
        let neighbors = |f: SitePos| {
            let mut out = Vec::new();
            if f.0 > i0 {
                out.push((f.0 - 1, f.1));
            }
            if f.0 < i1 {
                out.push((f.0 + 1, f.1));
            }
            if f.1 > j0 {
                out.push((f.0, f.1 - 1));
            }
            if f.1 < j1 {
                out.push((f.0, f.1 + 1));
            }
            out
        };
        let mut prev: std::collections::HashMap<SitePos, SitePos> = Default::default();
        let mut queue = std::collections::VecDeque::from([from]);
        prev.insert(from, from);
        while let Some(f) = queue.pop_front() {
            if f == to {
                let mut edges = Vec::new();
                let mut cur = to;
                while cur != from {
                    let p = prev[&cur];
                    edges.push(self.edge_between_faces(p, cur).expect("adjacent"));
                    cur = p;
                }
                return Ok(edges);
            }
            for nb in neighbors(f) {
                if !avoid.contains(&nb) && !prev.contains_key(&nb) {
                    prev.insert(nb, f);
                    queue.push_back(nb);
                }
            }
        }
        Err(SimError::BadDefectOp(format!("no face path {from:?} → {to:?}")))
    }

    /// BFS primal path (Z chain) between vertices avoiding the given ones.
    fn vertex_path_avoiding(
        &self,
        from: SitePos,
        to: SitePos,
        avoid: &[SitePos],
    ) -> Result<Vec<usize>> {
        let blocked: BTreeSet<SitePos> = avoid.iter().copied().collect();
        let neighbors = |v: SitePos| {
            let mut out = Vec::new();
            if v.0 > 0 {
                out.push((v.0 - 1, v.1));
            }
            if v.0 < self.h {
                out.push((v.0 + 1, v.1));
            }
            if v.1 > 0 {
                out.push((v.0, v.1 - 1));
            }
            if v.1 < self.w {
                out.push((v.0, v.1 + 1));
            }
            out
        };
        let mut prev: std::collections::HashMap<SitePos, SitePos> = Default::default();
        let mut queue = std::collections::VecDeque::from([from]);
        prev.insert(from, from);
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut edges = Vec::new();
                let mut cur = to;
                while cur != from {
                    let p = prev[&cur];
                    edges.push(self.edge_between_vertices(p, cur).expect("adjacent"));
                    cur = p;
                }
                return Ok(edges);
            }
            for nb in neighbors(v) {
                if !blocked.contains(&nb) && !prev.contains_key(&nb) {
                    prev.insert(nb, v);
                    queue.push_back(nb);
                }
            }
        }
        Err(SimError::BadDefectOp(format!("no vertex path {from:?} → {to:?}")))
    }
}

impl std::fmt::Debug for DefectLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DefectLattice({}x{}, {} live qubits)", self.w, self.h, self.live_qubits())
    }
}

#[cfg(test)]
mod tests;
