//! Incremental decoding with a freeze horizon.
//!
//! Matches that lie far behind the current cycle are unlikely to be modified
//! by new syndrome changes, so they are "remembered": once both endpoints of
//! a matched pair are older than `t_freeze` cycles, the pair's correction is
//! baked into a running mask and its nodes leave the active window. Each
//! decode call then only has to match the recent window (plus any caller
//! supplied extra events, e.g. from a perfect readout).
//!
//! Freezing is a heuristic. Whenever a fresh event arrives that would —
//! by a local exchange argument — have re-paired with an already frozen
//! node under full matching, a divergence counter is bumped; replay mode can
//! additionally compare against full re-matching exactly.

use super::{build_graph, correction_mask, min_weight_match, MatchTarget};
use crate::bits::BitVec;
use crate::frame::DetectionEvent;
use crate::lattice::{PlanarLattice, SyndKind};
use crate::Result;

#[derive(Debug, Clone)]
struct FrozenPair {
    a: DetectionEvent,
    /// None = matched to the boundary.
    b: Option<DetectionEvent>,
    weight: u64,
}

/// Streaming decoder for one graph kind.
#[derive(Debug, Clone)]
pub struct IncrementalDecoder {
    kind: SyndKind,
    t_freeze: u64,
    active: Vec<DetectionEvent>,
    frozen_correction: BitVec,
    /// Recently frozen pairs, kept for the divergence heuristic.
    recent_frozen: std::collections::VecDeque<FrozenPair>,
    /// Total matching weight of everything frozen so far.
    frozen_weight: u64,
    pub divergence_count: u64,
    /// Full event history, kept only when divergence auditing is on.
    history: Option<Vec<DetectionEvent>>,
}

impl IncrementalDecoder {
    pub fn new(lattice: &PlanarLattice, kind: SyndKind, t_freeze: u64) -> Self {
        IncrementalDecoder {
            kind,
            t_freeze,
            active: Vec::new(),
            frozen_correction: BitVec::zeros(lattice.n_data),
            recent_frozen: Default::default(),
            frozen_weight: 0,
            divergence_count: 0,
            history: None,
        }
    }

    /// Keep the full event history so [`Self::audit_against_full`] can be used.
    pub fn with_history(mut self) -> Self {
        self.history = Some(Vec::new());
        self
    }

    pub fn active_len(&self) -> usize {
        self.active.len()
    }

    /// Feed the detection events of a fresh noisy cycle (other kinds are
    /// filtered out).
    pub fn push_events(&mut self, events: &[DetectionEvent], lattice: &PlanarLattice) {
        for e in events.iter().filter(|e| e.kind == self.kind) {
            // Local-exchange witness: would this event have preferred one of
            // the frozen nodes over its own boundary under full matching?
            for f in &self.recent_frozen {
                let w_ea = lattice.space_distance(self.kind, e.id, f.a.id)
                    + e.cycle.abs_diff(f.a.cycle);
                let partner_boundary = match &f.b {
                    Some(b) => lattice.boundary_distance(self.kind, b.id),
                    None => 0,
                };
                let own_boundary = lattice.boundary_distance(self.kind, e.id);
                if w_ea + partner_boundary < f.weight + own_boundary {
                    self.divergence_count += 1;
                    break;
                }
            }
            self.active.push(*e);
            if let Some(h) = &mut self.history {
                h.push(*e);
            }
        }
    }

    /// Decode the active window together with `extra` events (typically the
    /// perfect-readout diffs, which are not retained), freeze pairs that have
    /// fallen behind the horizon, and return the full correction mask
    /// (frozen part included).
    pub fn decode(
        &mut self,
        extra: &[DetectionEvent],
        lattice: &PlanarLattice,
        current_cycle: u64,
    ) -> Result<BitVec> {
        let mut window: Vec<DetectionEvent> = self.active.clone();
        window.extend(extra.iter().filter(|e| e.kind == self.kind).copied());
        window.sort_by_key(|e| (e.cycle, e.id));
        let graph = build_graph(&window, lattice, self.kind)?;
        let matching = min_weight_match(&graph)?;
        let mut mask = self.frozen_correction.clone();
        mask.xor_assign(&correction_mask(&graph, &matching, lattice));

        // Freeze pairs fully behind the horizon. Extra events always carry the
        // current cycle, so they are never frozen.
        let cutoff = current_cycle.saturating_sub(self.t_freeze);
        let mut freeze: Vec<usize> = Vec::new();
        for (i, target) in matching.mates.iter().enumerate() {
            let ei = graph.nodes[i].event;
            if ei.cycle >= cutoff {
                continue;
            }
            match *target {
                MatchTarget::Boundary => freeze.push(i),
                MatchTarget::Node(j) if j > i => {
                    if graph.nodes[j].event.cycle < cutoff {
                        freeze.push(i);
                    }
                }
                MatchTarget::Node(_) => {}
            }
        }
        if !freeze.is_empty() {
            let mut frozen_nodes: Vec<DetectionEvent> = Vec::new();
            for &i in &freeze {
                let ei = graph.nodes[i].event;
                match matching.mates[i] {
                    MatchTarget::Boundary => {
                        for q in lattice.boundary_path(self.kind, ei.id) {
                            self.frozen_correction.flip(q);
                        }
                        let w = graph.nodes[i].boundary_weight;
                        self.frozen_weight += w;
                        self.recent_frozen.push_back(FrozenPair { a: ei, b: None, weight: w });
                        frozen_nodes.push(ei);
                    }
                    MatchTarget::Node(j) => {
                        let ej = graph.nodes[j].event;
                        for q in lattice.correction_path(self.kind, ei.id, ej.id) {
                            self.frozen_correction.flip(q);
                        }
                        let w = lattice.space_distance(self.kind, ei.id, ej.id)
                            + ei.cycle.abs_diff(ej.cycle);
                        self.frozen_weight += w;
                        self.recent_frozen.push_back(FrozenPair { a: ei, b: Some(ej), weight: w });
                        frozen_nodes.push(ei);
                        frozen_nodes.push(ej);
                    }
                }
            }
            self.active.retain(|e| !frozen_nodes.contains(e));
            // Pairs far behind the horizon can never be re-paired by new
            // events (the time separation alone outweighs any detour), so
            // stop auditing them.
            let audit_cutoff = current_cycle.saturating_sub(4 * self.t_freeze);
            while let Some(f) = self.recent_frozen.front() {
                if f.a.cycle < audit_cutoff {
                    self.recent_frozen.pop_front();
                } else {
                    break;
                }
            }
        }
        Ok(mask)
    }

    /// Exact check available when history is kept: decode everything seen so
    /// far from scratch plus `extra`, and compare the correction masks.
    /// Returns the full-matching mask and whether it diverges from the
    /// incremental one.
    pub fn audit_against_full(
        &self,
        incremental_mask: &BitVec,
        extra: &[DetectionEvent],
        lattice: &PlanarLattice,
    ) -> Result<(BitVec, bool)> {
        let history = self
            .history
            .as_ref()
            .expect("audit requires with_history()");
        let mut all: Vec<DetectionEvent> = history.clone();
        all.extend(extra.iter().filter(|e| e.kind == self.kind).copied());
        all.sort_by_key(|e| (e.cycle, e.id));
        let full = super::decode_events(&all, lattice, self.kind)?;
        let diverges = full != *incremental_mask;
        Ok((full, diverges))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::PlanarLattice;

    fn ev(id: usize, cycle: u64) -> DetectionEvent {
        DetectionEvent { kind: SyndKind::Z, id, cycle }
    }

    #[test]
    fn window_only_matches_full_matching() {
        let l = PlanarLattice::mixed(4).unwrap();
        let mut dec = IncrementalDecoder::new(&l, SyndKind::Z, 20).with_history();
        let events = vec![ev(l.z_id(1, 1), 1), ev(l.z_id(1, 2), 1)];
        dec.push_events(&events, &l);
        let mask = dec.decode(&[], &l, 1).unwrap();
        let (full, diverges) = dec.audit_against_full(&mask, &[], &l).unwrap();
        assert!(!diverges);
        assert_eq!(mask, full);
        assert!(mask.any());
    }

    #[test]
    fn far_separated_batches_match_full_matching() {
        let l = PlanarLattice::mixed(4).unwrap();
        let t_freeze = 5;
        let mut dec = IncrementalDecoder::new(&l, SyndKind::Z, t_freeze).with_history();
        dec.push_events(&[ev(l.z_id(1, 1), 1), ev(l.z_id(1, 2), 1)], &l);
        let mut mask = BitVec::zeros(l.n_data);
        for cycle in 1..=40u64 {
            if cycle == 25 {
                dec.push_events(&[ev(l.z_id(0, 1), 25), ev(l.z_id(0, 2), 25)], &l);
            }
            mask = dec.decode(&[], &l, cycle).unwrap();
        }
        let (full, diverges) = dec.audit_against_full(&mask, &[], &l).unwrap();
        assert!(!diverges, "separated batches must agree with full matching");
        assert_eq!(mask, full);
        assert_eq!(dec.divergence_count, 0);
        assert_eq!(dec.active_len(), 0); // everything frozen by now
    }

    #[test]
    fn adversarial_long_range_pair_is_flagged() {
        // A mid-lattice event is frozen to its (expensive, weight 3) boundary;
        // a later event one face over would have re-paired with it under full
        // matching (weight 1 + 4 = 5 < 3 + 3), so the divergence must be
        // detected and the masks must differ.
        let l = PlanarLattice::mixed(6).unwrap();
        let t_freeze = 3;
        let f1 = l.z_id(2, 2); // boundary distance 3
        let f2 = l.z_id(2, 3);
        let mut dec = IncrementalDecoder::new(&l, SyndKind::Z, t_freeze).with_history();
        dec.push_events(&[ev(f1, 1)], &l);
        let mut mask = BitVec::zeros(l.n_data);
        for cycle in 1..=5u64 {
            mask = dec.decode(&[], &l, cycle).unwrap();
        }
        assert_eq!(dec.active_len(), 0); // frozen to boundary at weight 3
        dec.push_events(&[ev(f2, 5)], &l);
        assert_eq!(dec.divergence_count, 1, "re-pair opportunity must be counted");
        mask = dec.decode(&[], &l, 5).unwrap();
        let (full, diverges) = dec.audit_against_full(&mask, &[], &l).unwrap();
        assert!(diverges, "full matching pairs the two events spacelike");
        assert_ne!(mask, full);
    }
}
