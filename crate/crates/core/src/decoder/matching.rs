//! Exact minimum-weight perfect matching over a [`MatchingGraph`].
//!
//! The blossom search itself is delegated to the `mwmatching` crate (a port
//! of van Rantwijk's reference implementation of Galil's O(n³) algorithm);
//! minimum weight is obtained by negating weights and requiring maximum
//! cardinality. Before solving, the graph is split into connected components
//! of the pruned edge set — boundary companions tie only to their owner, so
//! components match independently and the blossom calls stay small.

use super::MatchingGraph;
use crate::{Result, SimError};

/// What a node ended up matched to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchTarget {
    /// Another interior node.
    Node(usize),
    /// This node's boundary companion.
    Boundary,
}

/// A perfect matching over interior nodes and their boundary companions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    /// Target per interior node, indexed like `MatchingGraph::nodes`.
    pub mates: Vec<MatchTarget>,
    pub total_weight: u64,
}

impl Matching {
    /// Matched pairs with each interior-interior pair listed once.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, MatchTarget)> + '_ {
        self.mates.iter().enumerate().filter_map(|(i, t)| match t {
            MatchTarget::Node(j) if *j < i => None,
            t => Some((i, *t)),
        })
    }
}

/// Exact minimum-weight perfect matching; deterministic for identical graphs.
pub fn min_weight_match(graph: &MatchingGraph) -> Result<Matching> {
    let k = graph.nodes.len();
    let mut mates = vec![MatchTarget::Boundary; k];
    let mut total = 0u64;

    // Connected components of the pruned interior edges.
    let mut comp = UnionFind::new(k);
    for &(a, b, _) in &graph.edges {
        comp.union(a, b);
    }
    let mut members: std::collections::HashMap<usize, Vec<usize>> = Default::default();
    for i in 0..k {
        members.entry(comp.find(i)).or_default().push(i);
    }
    let mut edges_by_comp: std::collections::HashMap<usize, Vec<(usize, usize, u64)>> =
        Default::default();
    for &(a, b, w) in &graph.edges {
        edges_by_comp.entry(comp.find(a)).or_default().push((a, b, w));
    }

    let mut roots: Vec<usize> = members.keys().copied().collect();
    roots.sort_unstable();
    for root in roots {
        let nodes = &members[&root];
        if nodes.len() == 1 {
            // Lone node: its only option is the boundary companion.
            total += graph.nodes[nodes[0]].boundary_weight;
            continue;
        }
        let local: std::collections::HashMap<usize, usize> =
            nodes.iter().enumerate().map(|(li, &gi)| (gi, li)).collect();
        let n = nodes.len();
        // Local ids: interior 0..n, companions n..2n.
        let mut edges: Vec<(usize, usize, i32)> = Vec::new();
        let mut max_w = 0i64;
        let mut push = |edges: &mut Vec<(usize, usize, i32)>, a: usize, b: usize, w: u64| {
            max_w = max_w.max(w as i64);
            edges.push((a, b, w as i32));
        };
        for e in edges_by_comp.get(&root).into_iter().flatten() {
            push(&mut edges, local[&e.0], local[&e.1], e.2);
        }
        for (li, &gi) in nodes.iter().enumerate() {
            push(&mut edges, li, n + li, graph.nodes[gi].boundary_weight);
        }
        for a in 0..n {
            for b in (a + 1)..n {
                push(&mut edges, n + a, n + b, 0);
            }
        }
        // Negate for the maximum-weight solver; shifting is unnecessary since
        // max-cardinality mode accepts negative weights.
        let solver_edges: Vec<(usize, usize, i32)> =
            edges.iter().map(|&(a, b, w)| (a, b, -w)).collect();
        let mate = mwmatching::Matching::new(solver_edges).max_cardinality().solve();
        if mate.len() < 2 * n || mate[..2 * n].iter().any(|&m| m == mwmatching::SENTINEL) {
            return Err(SimError::OddNodeCount(2 * n));
        }
        let weight_of = |a: usize, b: usize| -> u64 {
            edges
                .iter()
                .find(|&&(x, y, _)| (x == a && y == b) || (x == b && y == a))
                .map(|&(_, _, w)| w as u64)
                .expect("matched pair must be an edge")
        };
        for (li, &gi) in nodes.iter().enumerate() {
            let m = mate[li];
            if m == n + li {
                mates[gi] = MatchTarget::Boundary;
                total += graph.nodes[gi].boundary_weight;
            } else if m < n {
                let gj = nodes[m];
                mates[gi] = MatchTarget::Node(gj);
                if m > li {
                    total += weight_of(li, m);
                }
            } else {
                // Matched to someone else's companion: no such edge exists.
                return Err(SimError::OddNodeCount(2 * n));
            }
        }
    }
    Ok(Matching { mates, total_weight: total })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
