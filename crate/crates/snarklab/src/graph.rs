//! Immutable cubic-graph data model.
//!
//! A [`CubicGraph`] is a simple 3-regular graph on dense vertex ids
//! `0..n` with a canonical lexicographic edge list. Every other module
//! works against this type; surgeries produce new graphs rather than
//! mutating existing ones, so graph values can be shared freely across
//! threads.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{EdgeSet, VertexSet};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotCubic { vertex: usize, degree: usize },
    #[error("loop or repeated neighbor at vertex {vertex}")]
    NotSimple { vertex: usize },
    #[error("adjacency inconsistent: {u} lists {v} but {v} does not list {u}")]
    Inconsistent { u: usize, v: usize },
}

/// An undirected edge stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeRef {
    pub u: usize,
    pub v: usize,
}

impl EdgeRef {
    pub fn new(a: usize, b: usize) -> Self {
        if a < b {
            EdgeRef { u: a, v: b }
        } else {
            EdgeRef { u: b, v: a }
        }
    }

    pub fn touches(&self, w: usize) -> bool {
        self.u == w || self.v == w
    }

    pub fn other(&self, w: usize) -> usize {
        if self.u == w {
            self.v
        } else {
            self.u
        }
    }

    /// True when the two edges share no endpoint.
    pub fn independent(&self, other: &EdgeRef) -> bool {
        !self.touches(other.u) && !self.touches(other.v)
    }
}

impl std::fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Immutable simple cubic graph.
#[derive(Clone, PartialEq, Eq)]
pub struct CubicGraph {
    n: usize,
    adj: Vec<[usize; 3]>,
    edges: Vec<EdgeRef>,
    incident: Vec<[usize; 3]>,
}

impl CubicGraph {
    /// Validates an adjacency list and builds the canonical representation.
    ///
    /// Neighbor lists are sorted, the edge list is ordered
    /// lexicographically on `(u, v)`, and edge indices everywhere else in
    /// the crate refer to that order. The same adjacency input always
    /// yields the same graph value.
    pub fn build(n: usize, adjacency: &[Vec<usize>]) -> Result<CubicGraph, GraphError> {
        assert_eq!(adjacency.len(), n, "adjacency must list all {n} vertices");
        let mut adj = Vec::with_capacity(n);
        for (v, nbrs) in adjacency.iter().enumerate() {
            if nbrs.len() != 3 {
                return Err(GraphError::NotCubic {
                    vertex: v,
                    degree: nbrs.len(),
                });
            }
            let mut trio = [nbrs[0], nbrs[1], nbrs[2]];
            trio.sort_unstable();
            if trio[0] == trio[1] || trio[1] == trio[2] || trio.contains(&v) {
                return Err(GraphError::NotSimple { vertex: v });
            }
            for &w in &trio {
                if w >= n {
                    return Err(GraphError::Inconsistent { u: v, v: w });
                }
            }
            adj.push(trio);
        }
        for (v, nbrs) in adj.iter().enumerate() {
            for &w in nbrs {
                if !adj[w].contains(&v) {
                    return Err(GraphError::Inconsistent { u: v, v: w });
                }
            }
        }
        let mut edges = Vec::with_capacity(3 * n / 2);
        for (v, nbrs) in adj.iter().enumerate() {
            for &w in nbrs {
                if v < w {
                    edges.push(EdgeRef { u: v, v: w });
                }
            }
        }
        edges.sort_unstable();
        let mut incident = vec![[usize::MAX; 3]; n];
        let mut fill = vec![0usize; n];
        for (i, e) in edges.iter().enumerate() {
            for &w in &[e.u, e.v] {
                incident[w][fill[w]] = i;
                fill[w] += 1;
            }
        }
        Ok(CubicGraph {
            n,
            adj,
            edges,
            incident,
        })
    }

    /// Builds from an explicit edge list; every vertex must end up with
    /// degree exactly 3.
    pub fn from_edge_list(n: usize, pairs: &[(usize, usize)]) -> Result<CubicGraph, GraphError> {
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(GraphError::Inconsistent {
                    u: a.min(b),
                    v: a.max(b),
                });
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for (v, nbrs) in adjacency.iter().enumerate() {
            if nbrs.len() != 3 {
                return Err(GraphError::NotCubic {
                    vertex: v,
                    degree: nbrs.len(),
                });
            }
        }
        CubicGraph::build(n, &adjacency)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[EdgeRef] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> EdgeRef {
        self.edges[index]
    }

    /// The three neighbors of `v`, in ascending order.
    pub fn neighbors(&self, v: usize) -> [usize; 3] {
        self.adj[v]
    }

    /// Indices of the three edges incident to `v`.
    pub fn incident_edges(&self, v: usize) -> [usize; 3] {
        self.incident[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && self.adj[a].contains(&b)
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.binary_search(&EdgeRef::new(a, b)).ok()
    }

    /// The two neighbors of `v` other than `excluded`, in ascending order.
    pub fn neighbors_excluding(&self, v: usize, excluded: usize) -> [usize; 2] {
        let mut out = [usize::MAX; 2];
        let mut k = 0;
        for &w in &self.adj[v] {
            if w != excluded {
                out[k] = w;
                k += 1;
            }
        }
        debug_assert_eq!(k, 2);
        out
    }

    /// Components of the graph after removing the given edges.
    ///
    /// The result is a partition of the vertex set; components are
    /// ordered by their smallest vertex.
    pub fn connected_components(&self, removed_edges: &EdgeSet) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        let mut stack = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = VertexSet::new(self.n);
            seen[start] = true;
            stack.push(start);
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for (slot, &w) in self.adj[v].iter().enumerate() {
                    if removed_edges.contains(self.incident[v][slot]) || seen[w] {
                        continue;
                    }
                    seen[w] = true;
                    stack.push(w);
                }
            }
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components(&EdgeSet::new(self.edge_count()))
            .len()
            == 1
    }

    /// True iff the subgraph induced by `vertex_set` contains a cycle.
    pub fn contains_cycle(&self, vertex_set: &VertexSet) -> bool {
        // A cycle exists iff some component of the induced subgraph has
        // at least as many edges as vertices.
        let mut verts = 0usize;
        let mut edges = 0usize;
        for v in vertex_set.iter() {
            verts += 1;
            for &w in &self.adj[v] {
                if w > v && vertex_set.contains(w) {
                    edges += 1;
                }
            }
        }
        if edges >= verts && verts > 0 {
            return true;
        }
        // Fewer edges than vertices overall can still hide a cyclic
        // component next to tree components; check per component.
        let mut seen = vec![false; self.n];
        let mut stack = Vec::new();
        for start in vertex_set.iter() {
            if seen[start] {
                continue;
            }
            let mut cv = 0usize;
            let mut ce = 0usize;
            seen[start] = true;
            stack.push(start);
            while let Some(v) = stack.pop() {
                cv += 1;
                for &w in &self.adj[v] {
                    if !vertex_set.contains(w) {
                        continue;
                    }
                    if w > v {
                        ce += 1;
                    }
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            if ce >= cv {
                return true;
            }
        }
        false
    }

    /// Stable 64-bit fingerprint of the labeled graph (FNV-1a over the
    /// canonical edge list). Used in provenance records.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf29ce484222325;
        let mut eat = |x: u64| {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        };
        eat(self.n as u64);
        for e in &self.edges {
            eat(e.u as u64);
            eat(e.v as u64);
        }
        h
    }
}

impl std::fmt::Debug for CubicGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CubicGraph(n={}, m={})", self.n, self.edges.len())
    }
}

/// The Petersen graph with the labeling used throughout this crate:
/// outer cycle 0-1-2-3-4, spokes i to i+5, inner cycle 5-7-9-6-8.
pub fn petersen() -> CubicGraph {
    let pairs = [
        (0, 1),
        (1, 2),
        (2, 3),
        (3, 4),
        (0, 4),
        (0, 5),
        (1, 6),
        (2, 7),
        (3, 8),
        (4, 9),
        (5, 7),
        (7, 9),
        (6, 9),
        (6, 8),
        (5, 8),
    ];
    CubicGraph::from_edge_list(10, &pairs).expect("Petersen graph is cubic")
}

/// K4, the smallest cubic graph.
pub fn k4() -> CubicGraph {
    CubicGraph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        .expect("K4 is cubic")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_has_four_vertices_six_edges() {
        let g = k4();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 6);
    }

    #[test]
    fn petersen_has_ten_vertices_fifteen_edges() {
        let g = petersen();
        assert_eq!(g.n(), 10);
        assert_eq!(g.edge_count(), 15);
        assert!(g.is_connected());
    }

    #[test]
    fn degree_two_vertex_is_rejected() {
        let adjacency = vec![vec![1, 2], vec![0, 2, 3], vec![0, 1, 3], vec![1, 2, 0]];
        match CubicGraph::build(4, &adjacency) {
            Err(GraphError::NotCubic {
                vertex: 0,
                degree: 2,
            }) => {}
            other => panic!("expected NotCubic, got {other:?}"),
        }
    }

    #[test]
    fn loops_and_parallel_edges_are_rejected() {
        let adjacency = vec![vec![0, 1, 2], vec![0, 2, 3], vec![0, 1, 3], vec![1, 2, 0]];
        assert!(matches!(
            CubicGraph::build(4, &adjacency),
            Err(GraphError::NotSimple { vertex: 0 })
        ));
        let adjacency = vec![vec![1, 1, 2], vec![0, 0, 2], vec![0, 1, 3], vec![2, 2, 0]];
        assert!(matches!(
            CubicGraph::build(4, &adjacency),
            Err(GraphError::NotSimple { .. })
        ));
    }

    #[test]
    fn asymmetric_adjacency_is_rejected() {
        let adjacency = vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 1]];
        assert!(matches!(
            CubicGraph::build(4, &adjacency),
            Err(GraphError::NotSimple { .. }) | Err(GraphError::Inconsistent { .. })
        ));
    }

    #[test]
    fn components_partition_the_vertices() {
        let g = petersen();
        let comps = g.connected_components(&EdgeSet::new(15));
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].count(), 10);

        let all = EdgeSet::from_iter(15, 0..15);
        let comps = g.connected_components(&all);
        assert_eq!(comps.len(), 10);
        assert!(comps.iter().all(|c| c.count() == 1));
    }

    #[test]
    fn two_disjoint_k4_copies_have_two_components() {
        let mut pairs = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        pairs.extend([(4, 5), (4, 6), (4, 7), (5, 6), (5, 7), (6, 7)]);
        let g = CubicGraph::from_edge_list(8, &pairs).unwrap();
        let comps = g.connected_components(&EdgeSet::new(g.edge_count()));
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].iter().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn induced_path_has_no_cycle_but_triangle_does() {
        let g = k4();
        // 3 vertices of K4 induce a triangle
        let tri = VertexSet::from_iter(4, [0, 1, 2]);
        assert!(g.contains_cycle(&tri));
        // a path of 3 vertices in Petersen (girth 5, so no small cycles)
        let p = petersen();
        let path = VertexSet::from_iter(10, [0, 1, 2]);
        assert!(!p.contains_cycle(&path));
        let whole = VertexSet::from_iter(10, 0..10);
        assert!(p.contains_cycle(&whole));
    }

    #[test]
    fn degree_sum_equals_twice_edge_count() {
        let g = petersen();
        let degsum: usize = (0..g.n()).map(|v| g.neighbors(v).len()).sum();
        assert_eq!(degsum, 2 * g.edge_count());
        assert_eq!(degsum, 3 * g.n());
    }

    #[test]
    fn build_is_deterministic() {
        let adjacency: Vec<Vec<usize>> =
            (0..10).map(|v| petersen().neighbors(v).to_vec()).collect();
        let g1 = CubicGraph::build(10, &adjacency).unwrap();
        let g2 = CubicGraph::build(10, &adjacency).unwrap();
        assert_eq!(g1.edges(), g2.edges());
        assert_eq!(g1.fingerprint(), g2.fingerprint());
    }
}
