//! Immutable simple-graph value type and neighborhood/degree primitives.
//!
//! Vertices are dense labels `0..n`. Adjacency is symmetric, self-loops are
//! rejected at construction, and the edge count is cached. Graph values are
//! immutable once built; all "mutation" goes through [`GraphBuilder`] or the
//! `with_*` helpers, which return fresh values. That makes a `Graph` freely
//! shareable across worker threads.

use std::collections::BTreeMap;

use crate::bitset::VertexSet;
use crate::Error;

/// Simple undirected graph on labels `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            m: 0,
            adj: vec![VertexSet::with_universe(n); n],
        }
    }

    /// Builds a graph from an edge list. Duplicate edges are collapsed.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, Error> {
        let mut b = GraphBuilder::new(n);
        for &(u, v) in edges {
            b.add_edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges; always equals half the degree sum.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    /// Open neighborhood of `v`. Panics when `v` is out of range.
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        assert!(v < self.n, "vertex {v} out of range for graph on {}", self.n);
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].contains(v)
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Edge list with endpoints ordered `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Vertices at distance exactly 2 from `v`; disjoint from `N[v]`.
    pub fn second_neighborhood(&self, v: usize) -> VertexSet {
        assert!(v < self.n, "vertex {v} out of range for graph on {}", self.n);
        let mut out = VertexSet::with_universe(self.n);
        for u in self.adj[v].iter() {
            out.union_with(&self.adj[u]);
        }
        out.subtract(&self.adj[v]);
        out.remove(v);
        out
    }

    pub fn degree_census(&self) -> DegreeCensus {
        let mut counts = BTreeMap::new();
        for v in 0..self.n {
            *counts.entry(self.degree(v)).or_insert(0) += 1;
        }
        DegreeCensus { counts }
    }

    /// Block-diagonal union with consecutive relabeling.
    pub fn disjoint_union(parts: &[Graph]) -> Result<Graph, Error> {
        if parts.is_empty() {
            return Err(Error::EmptyUnion);
        }
        let n: usize = parts.iter().map(|g| g.n).sum();
        let mut b = GraphBuilder::new(n);
        let mut offset = 0;
        for g in parts {
            for (u, v) in g.edges() {
                b.add_edge(u + offset, v + offset)?;
            }
            offset += g.n;
        }
        Ok(b.build())
    }

    /// Connected component containing `v`.
    pub fn component_of(&self, v: usize) -> VertexSet {
        assert!(v < self.n, "vertex {v} out of range for graph on {}", self.n);
        let mut seen = VertexSet::with_universe(self.n);
        seen.insert(v);
        let mut queue = vec![v];
        while let Some(u) = queue.pop() {
            for w in self.adj[u].iter() {
                if !seen.contains(w) {
                    seen.insert(w);
                    queue.push(w);
                }
            }
        }
        seen
    }

    /// Partition of the vertices into connected components, ordered by
    /// smallest contained vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut visited = VertexSet::with_universe(self.n);
        let mut out = Vec::new();
        for v in 0..self.n {
            if !visited.contains(v) {
                let comp = self.component_of(v);
                visited.union_with(&comp);
                out.push(comp);
            }
        }
        out
    }

    /// Two-colorability via BFS, per component.
    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n];
        for start in 0..self.n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for w in self.adj[u].iter() {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Subgraph induced by `keep`, relabeled by ascending original label.
    pub fn induced(&self, keep: &VertexSet) -> Graph {
        let verts = keep.to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i;
        }
        let mut b = GraphBuilder::new(verts.len());
        for &v in &verts {
            for w in self.adj[v].iter() {
                if v < w && keep.contains(w) {
                    b.add_edge(index[v], index[w]).expect("induced edge in range");
                }
            }
        }
        b.build()
    }

    /// Graph with vertex `v` removed; labels above `v` shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Graph {
        assert!(v < self.n, "vertex {v} out of range for graph on {}", self.n);
        let mut keep = VertexSet::with_universe(self.n);
        for u in 0..self.n {
            if u != v {
                keep.insert(u);
            }
        }
        self.induced(&keep)
    }

    /// Relabels vertices: `labeling[v]` is the new label of `v`.
    pub fn relabeled(&self, labeling: &[usize]) -> Graph {
        assert_eq!(labeling.len(), self.n);
        let mut b = GraphBuilder::new(self.n);
        for (u, v) in self.edges() {
            b.add_edge(labeling[u], labeling[v]).expect("relabel in range");
        }
        b.build()
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, Error> {
        let mut b = self.to_builder();
        b.add_edge(u, v)?;
        Ok(b.build())
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut b = self.to_builder();
        b.remove_edge(u, v);
        b.build()
    }

    pub fn to_builder(&self) -> GraphBuilder {
        GraphBuilder {
            n: self.n,
            adj: self.adj.clone(),
        }
    }

    // Common fixtures.

    pub fn complete(n: usize) -> Graph {
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            for v in u + 1..n {
                b.add_edge(u, v).unwrap();
            }
        }
        b.build()
    }

    pub fn path(n: usize) -> Graph {
        let mut b = GraphBuilder::new(n);
        for u in 1..n {
            b.add_edge(u - 1, u).unwrap();
        }
        b.build()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut b = GraphBuilder::new(n);
        for u in 0..n {
            b.add_edge(u, (u + 1) % n).unwrap();
        }
        b.build()
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Graph {
        let mut b = GraphBuilder::new(leaves + 1);
        for v in 1..=leaves {
            b.add_edge(0, v).unwrap();
        }
        b.build()
    }

    pub fn complete_bipartite(a: usize, b_count: usize) -> Graph {
        let mut b = GraphBuilder::new(a + b_count);
        for u in 0..a {
            for v in a..a + b_count {
                b.add_edge(u, v).unwrap();
            }
        }
        b.build()
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n, self.m, self.edges())
    }
}

/// Mutable construction companion for [`Graph`].
#[derive(Clone)]
pub struct GraphBuilder {
    n: usize,
    adj: Vec<VertexSet>,
}

impl GraphBuilder {
    pub fn new(n: usize) -> Self {
        GraphBuilder {
            n,
            adj: vec![VertexSet::with_universe(n); n],
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), Error> {
        if u >= self.n || v >= self.n {
            return Err(Error::VertexOutOfRange {
                vertex: u.max(v),
                n: self.n,
            });
        }
        if u == v {
            return Err(Error::SelfLoop { vertex: u });
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n && v < self.n {
            self.adj[u].remove(v);
            self.adj[v].remove(u);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].contains(v)
    }

    pub fn build(self) -> Graph {
        let degree_sum: usize = self.adj.iter().map(|s| s.count()).sum();
        debug_assert_eq!(degree_sum % 2, 0);
        Graph {
            n: self.n,
            m: degree_sum / 2,
            adj: self.adj,
        }
    }
}

/// Vertex counts per degree: `counts[d]` is the number of degree-`d` vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCensus {
    counts: BTreeMap<usize, usize>,
}

impl DegreeCensus {
    pub fn count_of(&self, degree: usize) -> usize {
        self.counts.get(&degree).copied().unwrap_or(0)
    }

    pub fn vertex_total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Degree sum; equals twice the edge count.
    pub fn degree_sum(&self) -> usize {
        self.counts.iter().map(|(d, c)| d * c).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter().map(|(&d, &c)| (d, c))
    }
}

/// Decodes the low bits of `mask` as the column-major upper triangle of an
/// adjacency matrix on `n` vertices. Test helper shared across modules.
#[cfg(test)]
pub(crate) fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut b = GraphBuilder::new(n);
    let mut bit = 0;
    for v in 1..n {
        for u in 0..v {
            if (mask >> bit) & 1 == 1 {
                b.add_edge(u, v).unwrap();
            }
            bit += 1;
        }
    }
    b.build()
}
