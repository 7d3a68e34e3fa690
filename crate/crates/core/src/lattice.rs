//! Planar surface-code geometry and the six-step syndrome-extraction schedule.
//!
//! Data qubits sit on the edges of a square grid, Z stabilizers on faces and
//! X stabilizers on vertices. Two variants are built:
//!
//! - [`PlanarLattice::all_smooth`] — a w×h-face patch with four smooth
//!   boundaries (2wh + w + h qubits, unique stabilizer state). Used by the
//!   defect laboratory, where logical qubits come from disabled stabilizers.
//! - [`PlanarLattice::mixed`] — the simulation lattice with two smooth
//!   boundaries (top/bottom) and two rough boundaries (left/right), encoding
//!   one logical qubit at distance d.
//!
//! In the mixed lattice the logical Z operator is a horizontal chain of Z's
//! terminating on the rough sides and the logical X a vertical chain of X's
//! terminating on the smooth sides; they intersect in exactly one qubit.
//!
//! Edge indexing interleaves rows of horizontal and vertical edges, matching
//! the customary numbering of the small all-smooth patch (qubit 0 is the
//! top-left horizontal edge, and e.g. the 2×2 patch has stabilizers X0X2 and
//! Z0Z2Z3Z5).

use crate::{Result, SimError};

/// Syndrome/stabilizer type: Z stabilizers live on faces, X on vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SyndKind {
    Z,
    X,
}

/// Which lattice flavour was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeKind {
    AllSmooth { w: usize, h: usize },
    Mixed { d: usize },
}

/// One stabilizer: its data-qubit support and grid position.
#[derive(Debug, Clone)]
pub struct StabilizerInfo {
    pub support: Vec<usize>,
    /// Face (row, col) for Z stabilizers, vertex (row, col) for X.
    pub pos: (usize, usize),
}

#[derive(Debug, Clone)]
pub struct PlanarLattice {
    pub kind: LatticeKind,
    pub n_data: usize,
    pub z_stabs: Vec<StabilizerInfo>,
    pub x_stabs: Vec<StabilizerInfo>,
    /// Horizontal chain of Z's, rough side to rough side (mixed lattice only).
    pub logical_z: Vec<usize>,
    /// Vertical chain of X's, smooth side to smooth side (mixed lattice only).
    pub logical_x: Vec<usize>,
}

impl PlanarLattice {
    /// The §-style w×h-face patch with four smooth boundaries.
    pub fn all_smooth(w: usize, h: usize) -> Result<Self> {
        if w == 0 || h == 0 {
            return Err(SimError::BadLatticeSize(w, h));
        }
        let geo = SmoothGeo { w, h };
        let n_data = 2 * w * h + w + h;
        let mut z_stabs = Vec::with_capacity(w * h);
        for i in 0..h {
            for j in 0..w {
                z_stabs.push(StabilizerInfo {
                    support: vec![
                        geo.horiz(i, j),
                        geo.vert(i, j),
                        geo.vert(i, j + 1),
                        geo.horiz(i + 1, j),
                    ],
                    pos: (i, j),
                });
            }
        }
        let mut x_stabs = Vec::with_capacity((w + 1) * (h + 1));
        for r in 0..=h {
            for c in 0..=w {
                let mut support = Vec::with_capacity(4);
                if r > 0 {
                    support.push(geo.vert(r - 1, c));
                }
                if c > 0 {
                    support.push(geo.horiz(r, c - 1));
                }
                if c < w {
                    support.push(geo.horiz(r, c));
                }
                if r < h {
                    support.push(geo.vert(r, c));
                }
                support.sort_unstable();
                x_stabs.push(StabilizerInfo { support, pos: (r, c) });
            }
        }
        Ok(PlanarLattice {
            kind: LatticeKind::AllSmooth { w, h },
            n_data,
            z_stabs,
            x_stabs,
            logical_z: Vec::new(),
            logical_x: Vec::new(),
        })
    }

    /// Distance-d lattice with smooth top/bottom and rough left/right
    /// boundaries; encodes one logical qubit.
    pub fn mixed(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(SimError::BadDistance(d));
        }
        let geo = MixedGeo { d };
        let n_data = d * d + (d - 1) * (d - 1);
        // Z stabilizers: face rows 0..d-1, face cols 0..d; the outermost
        // columns are three-term half faces (rough boundary).
        let mut z_stabs = Vec::with_capacity((d - 1) * d);
        for i in 0..d - 1 {
            for j in 0..d {
                let mut support = vec![geo.horiz(i, j), geo.horiz(i + 1, j)];
                if j >= 1 {
                    support.push(geo.vert(i, j));
                }
                if j + 1 <= d - 1 {
                    support.push(geo.vert(i, j + 1));
                }
                support.sort_unstable();
                z_stabs.push(StabilizerInfo { support, pos: (i, j) });
            }
        }
        // X stabilizers: vertex rows 0..d, vertex cols 1..d-1; the top and
        // bottom rows are three-term (smooth boundary).
        let mut x_stabs = Vec::with_capacity(d * (d - 1));
        for r in 0..d {
            for c in 1..d {
                let mut support = vec![geo.horiz(r, c - 1), geo.horiz(r, c)];
                if r >= 1 {
                    support.push(geo.vert(r - 1, c));
                }
                if r <= d - 2 {
                    support.push(geo.vert(r, c));
                }
                support.sort_unstable();
                x_stabs.push(StabilizerInfo { support, pos: (r, c) });
            }
        }
        let mid = d / 2;
        let logical_z: Vec<usize> = (0..d).map(|j| geo.horiz(mid, j)).collect();
        let logical_x: Vec<usize> = (0..d).map(|r| geo.horiz(r, mid)).collect();
        Ok(PlanarLattice {
            kind: LatticeKind::Mixed { d },
            n_data,
            z_stabs,
            x_stabs,
            logical_z,
            logical_x,
        })
    }

    pub fn distance(&self) -> Option<usize> {
        match self.kind {
            LatticeKind::Mixed { d } => Some(d),
            LatticeKind::AllSmooth { .. } => None,
        }
    }

    pub fn stab_count(&self, kind: SyndKind) -> usize {
        match kind {
            SyndKind::Z => self.z_stabs.len(),
            SyndKind::X => self.x_stabs.len(),
        }
    }

    pub fn stab(&self, kind: SyndKind, id: usize) -> &StabilizerInfo {
        match kind {
            SyndKind::Z => &self.z_stabs[id],
            SyndKind::X => &self.x_stabs[id],
        }
    }

    /// Z-stabilizer (face) id from coordinates.
    pub fn z_id(&self, row: usize, col: usize) -> usize {
        match self.kind {
            LatticeKind::AllSmooth { w, .. } => row * w + col,
            LatticeKind::Mixed { d } => row * d + col,
        }
    }

    /// X-stabilizer (vertex) id from coordinates.
    pub fn x_id(&self, row: usize, col: usize) -> usize {
        match self.kind {
            LatticeKind::AllSmooth { w, .. } => row * (w + 1) + col,
            LatticeKind::Mixed { d } => row * (d - 1) + (col - 1),
        }
    }

    pub fn horiz(&self, r: usize, j: usize) -> usize {
        match self.kind {
            LatticeKind::AllSmooth { w, .. } => SmoothGeo { w, h: 0 }.horiz(r, j),
            LatticeKind::Mixed { d } => MixedGeo { d }.horiz(r, j),
        }
    }

    pub fn vert(&self, i: usize, c: usize) -> usize {
        match self.kind {
            LatticeKind::AllSmooth { w, .. } => SmoothGeo { w, h: 0 }.vert(i, c),
            LatticeKind::Mixed { d } => MixedGeo { d }.vert(i, c),
        }
    }

    /// Spatial distance between two same-kind stabilizers, measured in faces
    /// (Manhattan distance on the face/vertex grid).
    pub fn space_distance(&self, kind: SyndKind, a: usize, b: usize) -> u64 {
        let pa = self.stab(kind, a).pos;
        let pb = self.stab(kind, b).pos;
        (pa.0.abs_diff(pb.0) + pa.1.abs_diff(pb.1)) as u64
    }

    /// Distance from a stabilizer to its nearest eligible boundary
    /// (smooth top/bottom for Z-graph nodes, rough left/right for X-graph).
    /// Only defined for the mixed lattice.
    pub fn boundary_distance(&self, kind: SyndKind, id: usize) -> u64 {
        let d = match self.kind {
            LatticeKind::Mixed { d } => d,
            LatticeKind::AllSmooth { .. } => panic!("boundary distance needs the mixed lattice"),
        };
        let pos = self.stab(kind, id).pos;
        match kind {
            SyndKind::Z => (pos.0 + 1).min(d - 1 - pos.0) as u64,
            SyndKind::X => pos.1.min(d - pos.1) as u64,
        }
    }

    /// Data qubits crossed by the canonical shortest path between two
    /// same-kind stabilizers: monotone in rows first, then in columns.
    pub fn correction_path(&self, kind: SyndKind, a: usize, b: usize) -> Vec<usize> {
        let pa = self.stab(kind, a).pos;
        let pb = self.stab(kind, b).pos;
        let mut qubits = Vec::new();
        let (mut r, mut c) = pa;
        while r != pb.0 {
            match kind {
                SyndKind::Z => {
                    // face (r,c) -> face (r±1,c) crosses the horizontal edge between them
                    if r < pb.0 {
                        qubits.push(self.horiz(r + 1, c));
                        r += 1;
                    } else {
                        qubits.push(self.horiz(r, c));
                        r -= 1;
                    }
                }
                SyndKind::X => {
                    // vertex (r,c) -> vertex (r±1,c) crosses the vertical edge between them
                    if r < pb.0 {
                        qubits.push(self.vert(r, c));
                        r += 1;
                    } else {
                        qubits.push(self.vert(r - 1, c));
                        r -= 1;
                    }
                }
            }
        }
        while c != pb.1 {
            match kind {
                SyndKind::Z => {
                    if c < pb.1 {
                        qubits.push(self.vert(r, c + 1));
                        c += 1;
                    } else {
                        qubits.push(self.vert(r, c));
                        c -= 1;
                    }
                }
                SyndKind::X => {
                    if c < pb.1 {
                        qubits.push(self.horiz(r, c));
                        c += 1;
                    } else {
                        qubits.push(self.horiz(r, c - 1));
                        c -= 1;
                    }
                }
            }
        }
        qubits
    }

    /// Data qubits crossed by the straight path from a stabilizer to its
    /// nearest eligible boundary (mixed lattice only).
    pub fn boundary_path(&self, kind: SyndKind, id: usize) -> Vec<usize> {
        let d = match self.kind {
            LatticeKind::Mixed { d } => d,
            LatticeKind::AllSmooth { .. } => panic!("boundary path needs the mixed lattice"),
        };
        let (r, c) = self.stab(kind, id).pos;
        match kind {
            SyndKind::Z => {
                if r + 1 <= d - 1 - r {
                    (0..=r).rev().map(|i| self.horiz(i, c)).collect()
                } else {
                    (r + 1..=d - 1).map(|i| self.horiz(i, c)).collect()
                }
            }
            SyndKind::X => {
                if c <= d - c {
                    (0..c).rev().map(|j| self.horiz(r, j)).collect()
                } else {
                    (c..d).map(|j| self.horiz(r, j)).collect()
                }
            }
        }
    }

    /// Text diagram of qubit roles, one glyph per site.
    pub fn ascii_diagram(&self) -> String {
        let (rows, cols) = match self.kind {
            LatticeKind::AllSmooth { w, h } => (2 * h + 1, 2 * w + 1),
            LatticeKind::Mixed { d } => (2 * d - 1, 2 * d - 1),
        };
        let mut out = String::new();
        for gr in 0..rows {
            for gc in 0..cols {
                let ch = match (gr % 2, gc % 2) {
                    (0, 0) => match self.kind {
                        // vertex sites (X syndromes) sit at even/even
                        LatticeKind::AllSmooth { .. } => 'v',
                        LatticeKind::Mixed { .. } => {
                            if gc == 0 || gc == cols - 1 {
                                '.'
                            } else {
                                'v'
                            }
                        }
                    },
                    (0, 1) => 'q', // horizontal-edge data qubit
                    (1, 0) => match self.kind {
                        LatticeKind::AllSmooth { .. } => 'q',
                        LatticeKind::Mixed { .. } => {
                            if gc == 0 || gc == cols - 1 {
                                '.'
                            } else {
                                'q'
                            }
                        }
                    },
                    _ => 'f', // face sites (Z syndromes)
                };
                out.push(ch);
                out.push(' ');
            }
            out.push('\n');
        }
        out
    }
}

struct SmoothGeo {
    w: usize,
    #[allow(dead_code)]
    h: usize,
}

impl SmoothGeo {
    fn horiz(&self, r: usize, j: usize) -> usize {
        r * (2 * self.w + 1) + j
    }
    fn vert(&self, i: usize, c: usize) -> usize {
        i * (2 * self.w + 1) + self.w + c
    }
}

struct MixedGeo {
    d: usize,
}

impl MixedGeo {
    fn horiz(&self, r: usize, j: usize) -> usize {
        r * (2 * self.d - 1) + j
    }
    fn vert(&self, i: usize, c: usize) -> usize {
        i * (2 * self.d - 1) + self.d + (c - 1)
    }
}

/// One CNOT of the extraction circuit. For Z syndromes the data qubit is the
/// control and the syndrome the target; for X syndromes the reverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScheduledCnot {
    pub kind: SyndKind,
    pub synd: usize,
    pub data: usize,
}

/// A qubit site in the extraction circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QubitRef {
    Data(usize),
    Synd(SyndKind, usize),
}

/// The six-step schedule: step 0 initializes every syndrome qubit, steps 1–4
/// run the CNOT layers in north, west, east, south order, step 5 reads every
/// syndrome qubit out.
#[derive(Debug, Clone)]
pub struct ExtractionSchedule {
    pub layers: [Vec<ScheduledCnot>; 4],
    /// Idle qubits per step 0..=5 (everything not acted on in that step).
    pub idle: [Vec<QubitRef>; 6],
}

const DIRECTIONS: [&str; 4] = ["north", "west", "east", "south"];

/// CNOT layer (0-based within steps 1..=4) in which a syndrome touches a
/// given neighbour direction, or None when the neighbour does not exist.
fn neighbour_in_direction(
    lattice: &PlanarLattice,
    kind: SyndKind,
    id: usize,
    dir: usize,
) -> Option<usize> {
    let (r, c) = lattice.stab(kind, id).pos;
    let (w, h, d) = match lattice.kind {
        LatticeKind::AllSmooth { w, h } => (w, h, 0),
        LatticeKind::Mixed { d } => (0, 0, d),
    };
    let idx = |q: usize| Some(q);
    match (lattice.kind, kind, dir) {
        // Faces: N and S are horizontal edges, W and E vertical.
        (LatticeKind::AllSmooth { .. }, SyndKind::Z, 0) => idx(lattice.horiz(r, c)),
        (LatticeKind::AllSmooth { .. }, SyndKind::Z, 1) => idx(lattice.vert(r, c)),
        (LatticeKind::AllSmooth { .. }, SyndKind::Z, 2) => idx(lattice.vert(r, c + 1)),
        (LatticeKind::AllSmooth { .. }, SyndKind::Z, 3) => idx(lattice.horiz(r + 1, c)),
        // Vertices: N and S are vertical edges, W and E horizontal.
        (LatticeKind::AllSmooth { .. }, SyndKind::X, 0) => {
            (r > 0).then(|| lattice.vert(r - 1, c))
        }
        (LatticeKind::AllSmooth { .. }, SyndKind::X, 1) => {
            (c > 0).then(|| lattice.horiz(r, c - 1))
        }
        (LatticeKind::AllSmooth { .. }, SyndKind::X, 2) => {
            (c < w).then(|| lattice.horiz(r, c))
        }
        (LatticeKind::AllSmooth { .. }, SyndKind::X, 3) => {
            (r < h).then(|| lattice.vert(r, c))
        }
        (LatticeKind::Mixed { .. }, SyndKind::Z, 0) => idx(lattice.horiz(r, c)),
        (LatticeKind::Mixed { .. }, SyndKind::Z, 1) => (c >= 1).then(|| lattice.vert(r, c)),
        (LatticeKind::Mixed { .. }, SyndKind::Z, 2) => {
            (c + 1 <= d - 1).then(|| lattice.vert(r, c + 1))
        }
        (LatticeKind::Mixed { .. }, SyndKind::Z, 3) => idx(lattice.horiz(r + 1, c)),
        (LatticeKind::Mixed { .. }, SyndKind::X, 0) => (r >= 1).then(|| lattice.vert(r - 1, c)),
        (LatticeKind::Mixed { .. }, SyndKind::X, 1) => idx(lattice.horiz(r, c - 1)),
        (LatticeKind::Mixed { .. }, SyndKind::X, 2) => idx(lattice.horiz(r, c)),
        (LatticeKind::Mixed { .. }, SyndKind::X, 3) => (r <= d - 2).then(|| lattice.vert(r, c)),
        _ => unreachable!(),
    }
}

/// Build the six-step schedule for a lattice.
pub fn build_schedule(lattice: &PlanarLattice) -> Result<ExtractionSchedule> {
    let mut layers: [Vec<ScheduledCnot>; 4] = Default::default();
    for kind in [SyndKind::Z, SyndKind::X] {
        for id in 0..lattice.stab_count(kind) {
            for dir in 0..4 {
                if let Some(data) = neighbour_in_direction(lattice, kind, id, dir) {
                    layers[dir].push(ScheduledCnot { kind, synd: id, data });
                }
            }
        }
    }
    let schedule = ExtractionSchedule {
        layers,
        idle: compute_idle(lattice, &Default::default()),
    };
    let mut schedule = schedule;
    schedule.idle = compute_idle(lattice, &schedule.layers);
    validate_no_conflicts(&schedule, lattice)?;
    validate_strict_ordering(&schedule, lattice)?;
    Ok(schedule)
}

fn compute_idle(lattice: &PlanarLattice, layers: &[Vec<ScheduledCnot>; 4]) -> [Vec<QubitRef>; 6] {
    let all_data: Vec<QubitRef> = (0..lattice.n_data).map(QubitRef::Data).collect();
    let mut idle: [Vec<QubitRef>; 6] = Default::default();
    idle[0] = all_data.clone(); // syndromes are being initialized
    idle[5] = all_data; // syndromes are being read out
    for (step, layer) in layers.iter().enumerate() {
        let mut busy_data = vec![false; lattice.n_data];
        let mut busy_z = vec![false; lattice.stab_count(SyndKind::Z)];
        let mut busy_x = vec![false; lattice.stab_count(SyndKind::X)];
        for c in layer {
            busy_data[c.data] = true;
            match c.kind {
                SyndKind::Z => busy_z[c.synd] = true,
                SyndKind::X => busy_x[c.synd] = true,
            }
        }
        let mut v = Vec::new();
        for (q, b) in busy_data.iter().enumerate() {
            if !b {
                v.push(QubitRef::Data(q));
            }
        }
        for (s, b) in busy_z.iter().enumerate() {
            if !b {
                v.push(QubitRef::Synd(SyndKind::Z, s));
            }
        }
        for (s, b) in busy_x.iter().enumerate() {
            if !b {
                v.push(QubitRef::Synd(SyndKind::X, s));
            }
        }
        idle[step + 1] = v;
    }
    idle
}

/// No qubit may take part in two gates within one step.
pub fn validate_no_conflicts(schedule: &ExtractionSchedule, lattice: &PlanarLattice) -> Result<()> {
    for (step, layer) in schedule.layers.iter().enumerate() {
        let mut seen = vec![false; lattice.n_data];
        for c in layer {
            if seen[c.data] {
                return Err(SimError::BadConfig(format!(
                    "data qubit {} used twice in the {} layer",
                    c.data, DIRECTIONS[step]
                )));
            }
            seen[c.data] = true;
        }
    }
    Ok(())
}

/// Adjacent syndrome circuits sharing two data qubits must be consistently
/// ordered: the circuit that touches one shared qubit first must touch the
/// other shared qubit first as well.
pub fn validate_strict_ordering(
    schedule: &ExtractionSchedule,
    lattice: &PlanarLattice,
) -> Result<()> {
    // step (1..=4) at which a syndrome touches a data qubit
    let mut touch: std::collections::HashMap<(SyndKind, usize, usize), usize> =
        std::collections::HashMap::new();
    for (step, layer) in schedule.layers.iter().enumerate() {
        for c in layer {
            touch.insert((c.kind, c.synd, c.data), step + 1);
        }
    }
    for (zi, z) in lattice.z_stabs.iter().enumerate() {
        for (xi, x) in lattice.x_stabs.iter().enumerate() {
            let shared: Vec<usize> = z
                .support
                .iter()
                .copied()
                .filter(|q| x.support.contains(q))
                .collect();
            if shared.len() < 2 {
                continue;
            }
            let mut signum: Option<bool> = None;
            for &q in &shared {
                let tz = touch[&(SyndKind::Z, zi, q)];
                let tx = touch[&(SyndKind::X, xi, q)];
                if tz == tx {
                    return Err(SimError::BadConfig(format!(
                        "Z{zi} and X{xi} touch qubit {q} in the same step"
                    )));
                }
                let s = tz < tx;
                if let Some(prev) = signum {
                    if prev != s {
                        return Err(SimError::BadConfig(format!(
                            "Z{zi} and X{xi} interleave on shared qubits {shared:?}"
                        )));
                    }
                }
                signum = Some(s);
            }
        }
    }
    Ok(())
}
