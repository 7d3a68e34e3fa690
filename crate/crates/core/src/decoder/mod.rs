//! Space-time matching decoder.
//!
//! Detection events become nodes of a weighted graph; every interior node
//! additionally gets a companion node on its closest eligible boundary, and
//! companion-companion edges cost nothing, so a perfect matching always
//! exists. Interior edge weights are the Manhattan distance measured in faces
//! (or vertices) plus the cycle difference, and an interior edge survives
//! pruning only if it is no heavier than the two boundary detours it
//! competes against — which provably never changes the optimum.
//!
//! Z-graph nodes live on face stabilizers (they detect X errors and match to
//! the smooth boundaries); X-graph nodes live on vertex stabilizers (Z
//! errors, rough boundaries).

mod incremental;
mod matching;

pub use incremental::IncrementalDecoder;
pub use matching::{min_weight_match, MatchTarget, Matching};

use crate::bits::BitVec;
use crate::frame::{DetectionEvent, ErrorFrame};
use crate::lattice::{PlanarLattice, SyndKind};
use crate::{Result, SimError};

/// One detection event promoted to a graph node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphNode {
    pub event: DetectionEvent,
    /// Weight of the edge to this node's boundary companion.
    pub boundary_weight: u64,
}

/// Matching graph over the detection events of one kind.
#[derive(Debug, Clone)]
pub struct MatchingGraph {
    pub kind: SyndKind,
    pub nodes: Vec<GraphNode>,
    /// Pruned interior-interior edges (a < b, weight).
    pub edges: Vec<(usize, usize, u64)>,
}

impl MatchingGraph {
    /// Total node count including boundary companions.
    pub fn node_count(&self) -> usize {
        2 * self.nodes.len()
    }
}

/// Build the matching graph for the events of `kind`.
///
/// Events of the other kind are ignored, so callers may pass a mixed list.
pub fn build_graph(
    events: &[DetectionEvent],
    lattice: &PlanarLattice,
    kind: SyndKind,
) -> Result<MatchingGraph> {
    let mut nodes = Vec::new();
    let mut last_cycle = 0u64;
    for e in events.iter().filter(|e| e.kind == kind) {
        if e.id >= lattice.stab_count(kind) {
            return Err(SimError::BadEvent(format!(
                "stabilizer id {} out of range for {:?} graph",
                e.id, kind
            )));
        }
        if e.cycle < last_cycle {
            return Err(SimError::BadEvent("events not sorted by cycle".into()));
        }
        last_cycle = e.cycle;
        nodes.push(GraphNode {
            event: *e,
            boundary_weight: lattice.boundary_distance(kind, e.id),
        });
    }
    let mut edges = Vec::new();
    for a in 0..nodes.len() {
        for b in (a + 1)..nodes.len() {
            let w = lattice.space_distance(kind, nodes[a].event.id, nodes[b].event.id)
                + nodes[a].event.cycle.abs_diff(nodes[b].event.cycle);
            if w <= nodes[a].boundary_weight + nodes[b].boundary_weight {
                edges.push((a, b, w));
            }
        }
    }
    Ok(MatchingGraph { kind, nodes, edges })
}

/// Data-qubit flips implied by a matching: the spatial projection of each
/// matched pair's shortest path (timelike segments contribute nothing), and
/// the straight path to the boundary for boundary-matched nodes.
pub fn correction_mask(
    graph: &MatchingGraph,
    matching: &Matching,
    lattice: &PlanarLattice,
) -> BitVec {
    let mut mask = BitVec::zeros(lattice.n_data);
    for (i, target) in matching.mates.iter().enumerate() {
        match *target {
            MatchTarget::Node(j) => {
                if j > i {
                    for q in lattice.correction_path(
                        graph.kind,
                        graph.nodes[i].event.id,
                        graph.nodes[j].event.id,
                    ) {
                        mask.flip(q);
                    }
                }
            }
            MatchTarget::Boundary => {
                for q in lattice.boundary_path(graph.kind, graph.nodes[i].event.id) {
                    mask.flip(q);
                }
            }
        }
    }
    mask
}

/// Apply a matching's correction to the frame: X flips for the Z graph,
/// Z flips for the X graph.
pub fn apply_correction(
    frame: &mut ErrorFrame,
    graph: &MatchingGraph,
    matching: &Matching,
    lattice: &PlanarLattice,
) {
    let mask = correction_mask(graph, matching, lattice);
    match graph.kind {
        SyndKind::Z => frame.x_err.xor_assign(&mask),
        SyndKind::X => frame.z_err.xor_assign(&mask),
    }
}

/// One-shot decode: graph, matching, correction mask.
pub fn decode_events(
    events: &[DetectionEvent],
    lattice: &PlanarLattice,
    kind: SyndKind,
) -> Result<BitVec> {
    let graph = build_graph(events, lattice, kind)?;
    let matching = min_weight_match(&graph)?;
    Ok(correction_mask(&graph, &matching, lattice))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::DetectionEvent;
    use crate::lattice::PlanarLattice;

    fn ev(kind: SyndKind, id: usize, cycle: u64) -> DetectionEvent {
        DetectionEvent { kind, id, cycle }
    }

    #[test]
    fn empty_events_empty_graph() {
        let l = PlanarLattice::mixed(4).unwrap();
        let g = build_graph(&[], &l, SyndKind::Z).unwrap();
        assert!(g.nodes.is_empty() && g.edges.is_empty());
        let m = min_weight_match(&g).unwrap();
        assert_eq!(m.total_weight, 0);
    }

    #[test]
    fn adjacent_faces_same_cycle_weight_one() {
        let l = PlanarLattice::mixed(4).unwrap();
        let a = l.z_id(1, 1);
        let b = l.z_id(1, 2);
        let g = build_graph(&[ev(SyndKind::Z, a, 3), ev(SyndKind::Z, b, 3)], &l, SyndKind::Z).unwrap();
        assert_eq!(g.edges, vec![(0, 1, 1)]);
        assert_eq!(g.nodes[0].boundary_weight, 2);
        let m = min_weight_match(&g).unwrap();
        assert_eq!(m.total_weight, 1);
        assert_eq!(m.mates[0], MatchTarget::Node(1));
    }

    #[test]
    fn distant_pair_is_pruned() {
        // Two events with space distance 5 on a d=4 lattice, each 1 from its
        // boundary: 5 > 1 + 1, so the interior edge is dropped and both nodes
        // match to their boundaries.
        let l = PlanarLattice::mixed(4).unwrap();
        let a = l.z_id(0, 0); // boundary distance 1 (top)
        let b = l.z_id(2, 3); // boundary distance 1 (bottom); space distance 2+3 = 5
        assert_eq!(l.space_distance(SyndKind::Z, a, b), 5);
        let g = build_graph(&[ev(SyndKind::Z, a, 1), ev(SyndKind::Z, b, 1)], &l, SyndKind::Z).unwrap();
        assert!(g.edges.is_empty());
        let m = min_weight_match(&g).unwrap();
        assert_eq!(m.total_weight, 2);
        assert!(m.mates.iter().all(|t| *t == MatchTarget::Boundary));
    }

    #[test]
    fn single_node_matches_boundary() {
        let l = PlanarLattice::mixed(3).unwrap();
        let g = build_graph(&[ev(SyndKind::X, l.x_id(1, 1), 2)], &l, SyndKind::X).unwrap();
        let m = min_weight_match(&g).unwrap();
        assert_eq!(m.mates, vec![MatchTarget::Boundary]);
        assert_eq!(m.total_weight, 1);
    }

    #[test]
    fn timelike_pair_applies_no_correction() {
        let l = PlanarLattice::mixed(3).unwrap();
        let s = l.z_id(1, 1);
        let events = [ev(SyndKind::Z, s, 1), ev(SyndKind::Z, s, 2)];
        let g = build_graph(&events, &l, SyndKind::Z).unwrap();
        let m = min_weight_match(&g).unwrap();
        assert_eq!(m.total_weight, 1);
        assert_eq!(m.mates[0], MatchTarget::Node(1));
        let mask = correction_mask(&g, &m, &l);
        assert!(!mask.any());
    }

    #[test]
    fn bad_event_ids_rejected() {
        let l = PlanarLattice::mixed(3).unwrap();
        assert!(build_graph(&[ev(SyndKind::Z, 999, 1)], &l, SyndKind::Z).is_err());
        let unsorted = [ev(SyndKind::Z, 0, 5), ev(SyndKind::Z, 1, 2)];
        assert!(build_graph(&unsorted, &l, SyndKind::Z).is_err());
    }
}
