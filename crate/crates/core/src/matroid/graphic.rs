use std::collections::VecDeque;

use super::spec::MatroidSpec;
use super::{IndependentView, Matroid, MatroidError};
use crate::set::ElementSet;

/// Cycle matroid of a multigraph: elements are edges, independent sets are
/// forests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphicMatroid {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// False when `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

impl GraphicMatroid {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self, MatroidError> {
        for (edge, &(u, v)) in edges.iter().enumerate() {
            for vertex in [u, v] {
                if vertex >= vertices {
                    return Err(MatroidError::BadVertex { edge, vertex });
                }
            }
            if u == v {
                return Err(MatroidError::SelfLoop { edge, vertex: u });
            }
        }
        Ok(Self { vertices, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    fn forest_unions(&self, set: &ElementSet) -> usize {
        let mut ds = DisjointSets::new(self.vertices);
        set.iter()
            .filter(|&e| {
                let (u, v) = self.edges[e];
                ds.union(u, v)
            })
            .count()
    }
}

impl Matroid for GraphicMatroid {
    fn ground_size(&self) -> usize {
        self.edges.len()
    }

    fn describe(&self) -> Option<MatroidSpec> {
        Some(MatroidSpec::from(self))
    }

    fn is_independent(&self, set: &ElementSet) -> bool {
        let mut ds = DisjointSets::new(self.vertices);
        set.iter().all(|e| {
            let (u, v) = self.edges[e];
            ds.union(u, v)
        })
    }

    fn rank(&self, set: &ElementSet) -> usize {
        self.forest_unions(set)
    }

    fn view<'a>(&'a self, independent: &ElementSet) -> Box<dyn IndependentView + 'a> {
        let mut ds = DisjointSets::new(self.vertices);
        let mut adj = vec![Vec::new(); self.vertices];
        for e in independent {
            let (u, v) = self.edges[e];
            ds.union(u, v);
            adj[u].push((v, e));
            adj[v].push((u, e));
        }
        let component = (0..self.vertices).map(|x| ds.find(x)).collect();
        Box::new(ForestView {
            graph: self,
            base: independent.clone(),
            component,
            adj,
        })
    }
}

struct ForestView<'a> {
    graph: &'a GraphicMatroid,
    base: ElementSet,
    component: Vec<usize>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl ForestView<'_> {
    /// Edges on the unique forest path between `from` and `to`.
    fn path(&self, from: usize, to: usize) -> ElementSet {
        let mut via = vec![None; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(x) = queue.pop_front() {
            if x == to {
                break;
            }
            for &(y, e) in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    via[y] = Some((x, e));
                    queue.push_back(y);
                }
            }
        }
        let mut path = ElementSet::new();
        let mut cur = to;
        while let Some((prev, e)) = via[cur] {
            path.insert(e);
            cur = prev;
        }
        path
    }
}

impl IndependentView for ForestView<'_> {
    fn can_add(&self, e: usize) -> bool {
        let (u, v) = self.graph.edges[e];
        !self.base.contains(e) && self.component[u] != self.component[v]
    }

    fn circuit(&self, e: usize) -> Option<ElementSet> {
        if self.base.contains(e) || self.can_add(e) {
            return None;
        }
        let (u, v) = self.graph.edges[e];
        Some(self.path(u, v).with(e))
    }
}
