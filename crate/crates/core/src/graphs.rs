//! Small simple graphs: enumeration up to isomorphism and spanning trees.

use std::collections::HashMap;

use petgraph::algo::is_isomorphic;
use petgraph::graph::UnGraph;

use crate::matroid::{GraphicMatroid, MatroidExt};
use crate::set::ElementSet;

/// A simple graph on `0..vertices` with edges `(u, v)`, `u < v`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SmallGraph {
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges: Vec<(usize, usize)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        edges.dedup();
        Self { vertices, edges }
    }

    pub fn matroid(&self) -> GraphicMatroid {
        GraphicMatroid::new(self.vertices, self.edges.clone()).expect("simple graph")
    }

    fn petgraph(&self) -> UnGraph<(), ()> {
        let mut g = UnGraph::with_capacity(self.vertices, self.edges.len());
        let nodes: Vec<_> = (0..self.vertices).map(|_| g.add_node(())).collect();
        for &(u, v) in &self.edges {
            g.add_edge(nodes[u], nodes[v], ());
        }
        g
    }

    /// Isomorphism-invariant fingerprint used to bucket candidates.
    fn invariant(&self) -> (usize, usize, Vec<(usize, Vec<usize>)>) {
        let mut deg = vec![0; self.vertices];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        let mut nbr = vec![Vec::new(); self.vertices];
        for &(u, v) in &self.edges {
            nbr[u].push(deg[v]);
            nbr[v].push(deg[u]);
        }
        let mut profile: Vec<(usize, Vec<usize>)> = (0..self.vertices)
            .map(|v| {
                nbr[v].sort_unstable();
                (deg[v], std::mem::take(&mut nbr[v]))
            })
            .collect();
        profile.sort_unstable();
        (self.vertices, self.edges.len(), profile)
    }
}

/// Every connected simple graph with between 1 and `max_edges` edges, one
/// per isomorphism class, in order of edge count.
pub fn connected_graphs(max_edges: usize) -> Vec<SmallGraph> {
    let mut out = Vec::new();
    let mut layer = vec![SmallGraph::new(2, [(0, 1)])];
    for m in 1..=max_edges {
        if m > 1 {
            let mut buckets: HashMap<_, Vec<(SmallGraph, UnGraph<(), ()>)>> = HashMap::new();
            let mut next = Vec::new();
            for g in &layer {
                for candidate in extensions(g) {
                    let bucket = buckets.entry(candidate.invariant()).or_default();
                    let pg = candidate.petgraph();
                    if bucket.iter().any(|(_, other)| is_isomorphic(&pg, other)) {
                        continue;
                    }
                    bucket.push((candidate.clone(), pg));
                    next.push(candidate);
                }
            }
            layer = next;
        }
        out.extend(layer.iter().cloned());
    }
    out
}

/// Graphs with one more edge: between two existing vertices or to a new one.
fn extensions(g: &SmallGraph) -> Vec<SmallGraph> {
    let mut out = Vec::new();
    for u in 0..g.vertices {
        for v in u + 1..g.vertices {
            if !g.edges.contains(&(u, v)) {
                out.push(SmallGraph::new(g.vertices, g.edges.iter().copied().chain([(u, v)])));
            }
        }
        out.push(SmallGraph::new(
            g.vertices + 1,
            g.edges.iter().copied().chain([(u, g.vertices)]),
        ));
    }
    out
}

/// All spanning trees (bases of the cycle matroid) as edge-index sets.
pub fn spanning_trees(g: &GraphicMatroid) -> Vec<ElementSet> {
    let n = g.edges().len();
    let r = g.full_rank();
    assert!(n < 64, "spanning tree enumeration is for small graphs");
    (0u64..1 << n)
        .filter(|m| m.count_ones() as usize == r)
        .map(ElementSet::from_mask)
        .filter(|s| g.is_basis(s))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_sequence() {
        let graphs = connected_graphs(6);
        let by_edges: Vec<usize> = (1..=6)
            .map(|m| graphs.iter().filter(|g| g.edges.len() == m).count())
            .collect();
        assert_eq!(by_edges, vec![1, 1, 3, 5, 12, 30]);
    }

    #[test]
    fn spanning_trees_of_k4() {
        let k4 = SmallGraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(spanning_trees(&k4.matroid()).len(), 16);
    }
}
