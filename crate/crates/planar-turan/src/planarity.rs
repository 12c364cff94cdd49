//! Planarity decision and triangulation generators.
//!
//! The decision procedure is the left-right (edge orientation) planarity
//! criterion of de Fraysseix and Rosenstiehl, following the formulation in
//! U. Brandes, "The left-right planarity test" (the same structure used by
//! the NetworkX `check_planarity` routine). It runs in O(n + m) with both
//! DFS passes iterative, so component size never limits recursion depth.

use rand::Rng;

use crate::graph::{Graph, GraphBuilder};
use crate::Error;

/// Outcome of the edge-count filter: a cheap necessary condition only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EulerVerdict {
    Nonplanar,
    Inconclusive,
}

/// Edge-count screening: `m > 3n - 6` (or `m > 2n - 4` for bipartite graphs,
/// both for `n >= 3`) certifies nonplanarity. Never rejects a planar graph.
pub fn euler_filter(g: &Graph) -> EulerVerdict {
    let n = g.n();
    if n >= 3 {
        if g.m() > 3 * n - 6 {
            return EulerVerdict::Nonplanar;
        }
        if g.m() > 2 * n - 4 && g.is_bipartite() {
            return EulerVerdict::Nonplanar;
        }
    }
    EulerVerdict::Inconclusive
}

/// Left-right planarity test.
pub fn is_planar(g: &Graph) -> bool {
    // Graphs this small are always planar; the smallest nonplanar graph has 9 edges.
    if g.n() <= 4 || g.m() <= 8 {
        return true;
    }
    if euler_filter(g) == EulerVerdict::Nonplanar {
        return false;
    }
    LrState::new(g).run()
}

type EdgeId = usize;
const NONE: usize = usize::MAX;

#[derive(Clone, Copy, Default)]
struct Interval {
    low: Option<EdgeId>,
    high: Option<EdgeId>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Default)]
struct ConflictPair {
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct LrState {
    n: usize,
    // Half-edge incidence: adj[v] lists (neighbor, edge id).
    adj: Vec<Vec<(usize, EdgeId)>>,
    // Oriented endpoints, fixed by the orientation DFS.
    src: Vec<usize>,
    dst: Vec<usize>,
    oriented: Vec<bool>,
    height: Vec<usize>,
    parent_edge: Vec<Option<EdgeId>>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<usize>,
    // Testing phase bookkeeping.
    ordered: Vec<Vec<EdgeId>>,
    ref_edge: Vec<Option<EdgeId>>,
    side: Vec<i8>,
    lowpt_edge: Vec<Option<EdgeId>>,
    stack_bottom: Vec<usize>,
    stack: Vec<ConflictPair>,
    roots: Vec<usize>,
}

impl LrState {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let edges = g.edges();
        let m = edges.len();
        let mut adj = vec![Vec::new(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, id));
            adj[v].push((u, id));
        }
        LrState {
            n,
            adj,
            src: vec![NONE; m],
            dst: vec![NONE; m],
            oriented: vec![false; m],
            height: vec![NONE; n],
            parent_edge: vec![None; n],
            lowpt: vec![0; m],
            lowpt2: vec![0; m],
            nesting_depth: vec![0; m],
            ordered: vec![Vec::new(); n],
            ref_edge: vec![None; m],
            side: vec![1; m],
            lowpt_edge: vec![None; m],
            stack_bottom: vec![0; m],
            stack: Vec::new(),
            roots: Vec::new(),
        }
    }

    fn run(&mut self) -> bool {
        for root in 0..self.n {
            if self.height[root] == NONE {
                self.height[root] = 0;
                self.roots.push(root);
                self.orientation_dfs(root);
            }
        }
        // Outgoing edges sorted by nesting depth; ties broken by edge id for
        // a deterministic traversal.
        for e in 0..self.src.len() {
            if self.oriented[e] {
                self.ordered[self.src[e]].push(e);
            }
        }
        for v in 0..self.n {
            self.ordered[v].sort_by_key(|&e| (self.nesting_depth[e], e));
        }
        let roots = std::mem::take(&mut self.roots);
        for root in roots {
            // Components are independent; a fresh stack per root keeps the
            // conflict intervals of one component out of the next.
            self.stack.clear();
            if !self.testing_dfs(root) {
                return false;
            }
        }
        true
    }

    /// Phase 1: orient edges, compute heights, lowpoints and nesting depth.
    fn orientation_dfs(&mut self, root: usize) {
        let mut cursor = vec![0usize; self.n];
        let mut stack = vec![root];
        while let Some(&v) = stack.last() {
            let mut descended = false;
            while cursor[v] < self.adj[v].len() {
                let (w, e) = self.adj[v][cursor[v]];
                cursor[v] += 1;
                if self.oriented[e] || w == v {
                    continue;
                }
                self.oriented[e] = true;
                self.src[e] = v;
                self.dst[e] = w;
                self.lowpt[e] = self.height[v];
                self.lowpt2[e] = self.height[v];
                if self.height[w] == NONE {
                    // tree edge
                    self.parent_edge[w] = Some(e);
                    self.height[w] = self.height[v] + 1;
                    stack.push(w);
                    descended = true;
                    break;
                } else {
                    // back edge
                    self.lowpt[e] = self.height[w];
                    self.finish_edge(e);
                }
            }
            if !descended {
                stack.pop();
                if let Some(e) = self.parent_edge[v] {
                    self.finish_edge(e);
                }
            }
        }
    }

    /// Nesting depth of `e` plus lowpoint propagation into its parent edge.
    fn finish_edge(&mut self, e: EdgeId) {
        let v = self.src[e];
        self.nesting_depth[e] = 2 * self.lowpt[e];
        if self.lowpt2[e] < self.height[v] {
            // chordal edge
            self.nesting_depth[e] += 1;
        }
        if let Some(pe) = self.parent_edge[v] {
            if self.lowpt[e] < self.lowpt[pe] {
                self.lowpt2[pe] = self.lowpt[pe].min(self.lowpt2[e]);
                self.lowpt[pe] = self.lowpt[e];
            } else if self.lowpt[e] > self.lowpt[pe] {
                self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt[e]);
            } else {
                self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt2[e]);
            }
        }
    }

    /// Phase 2: integrate edges in nesting order, maintaining conflict pairs.
    fn testing_dfs(&mut self, root: usize) -> bool {
        let mut cursor = vec![0usize; self.n];
        let mut entered = vec![false; self.src.len()];
        let mut stack = vec![root];
        while let Some(&v) = stack.last() {
            let parent = self.parent_edge[v];
            let mut descended = false;
            while cursor[v] < self.ordered[v].len() {
                let idx = cursor[v];
                let ei = self.ordered[v][idx];
                let w = self.dst[ei];
                if !entered[ei] {
                    entered[ei] = true;
                    self.stack_bottom[ei] = self.stack.len();
                    if Some(ei) == self.parent_edge[w] {
                        // tree edge: descend, post-process on return
                        stack.push(w);
                        descended = true;
                        break;
                    } else {
                        // back edge
                        self.lowpt_edge[ei] = Some(ei);
                        self.stack.push(ConflictPair {
                            left: Interval::default(),
                            right: Interval {
                                low: Some(ei),
                                high: Some(ei),
                            },
                        });
                    }
                }
                // Integrate constraints of ei (for tree edges this runs after
                // the subtree has been processed).
                if self.lowpt[ei] < self.height[v] {
                    // ei has a return edge
                    if idx == 0 {
                        if let Some(pe) = parent {
                            self.lowpt_edge[pe] = self.lowpt_edge[ei];
                        }
                    } else if !self.add_constraints(ei, parent.expect("non-first edge has parent")) {
                        return false;
                    }
                }
                cursor[v] += 1;
            }
            if descended {
                continue;
            }
            stack.pop();
            if let Some(e) = parent {
                let u = self.src[e];
                self.trim_back_edges(u);
                // The side of e is the side of a highest return edge.
                if self.lowpt[e] < self.height[u] {
                    if let Some(top) = self.stack.last() {
                        let hl = top.left.high;
                        let hr = top.right.high;
                        let pick_left = match (hl, hr) {
                            (Some(l), Some(r)) => self.lowpt[l] > self.lowpt[r],
                            (Some(_), None) => true,
                            _ => false,
                        };
                        self.ref_edge[e] = if pick_left { hl } else { hr };
                    }
                }
            }
        }
        true
    }

    fn lowest(&self, p: &ConflictPair) -> Option<usize> {
        match (p.left.low, p.right.low) {
            (Some(l), Some(r)) => Some(self.lowpt[l].min(self.lowpt[r])),
            (Some(l), None) => Some(self.lowpt[l]),
            (None, Some(r)) => Some(self.lowpt[r]),
            (None, None) => None,
        }
    }

    fn conflicting(&self, i: &Interval, b: EdgeId) -> bool {
        match i.high {
            Some(h) => self.lowpt[h] > self.lowpt[b],
            None => false,
        }
    }

    fn add_constraints(&mut self, ei: EdgeId, e: EdgeId) -> bool {
        let mut p = ConflictPair::default();
        // Merge return edges of ei into p.right.
        loop {
            let mut q = self.stack.pop().expect("stack holds ei's own pair");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false; // K5 or K3,3 structure
            }
            let q_low = q.right.low.expect("non-empty right interval");
            if self.lowpt[q_low] > self.lowpt[e] {
                // merge intervals
                match p.right.low {
                    None => p.right.high = q.right.high,
                    Some(pl) => self.ref_edge[pl] = q.right.high,
                }
                p.right.low = q.right.low;
            } else {
                // align
                self.ref_edge[q_low] = self.lowpt_edge[e];
            }
            if self.stack.len() == self.stack_bottom[ei] {
                break;
            }
        }
        // Merge conflicting return edges of earlier siblings into p.left.
        loop {
            let top = self.stack.last().expect("conflict loop keeps stack non-empty");
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().unwrap();
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            // merge interval below lowpt(ei) into p.right
            if let Some(pl) = p.right.low {
                self.ref_edge[pl] = q.right.high;
            }
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            match p.left.low {
                None => p.left.high = q.left.high,
                Some(pl) => self.ref_edge[pl] = q.left.high,
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn trim_back_edges(&mut self, u: usize) {
        // Drop entire conflict pairs returning to u.
        while let Some(top) = self.stack.last() {
            if self.lowest(top) == Some(self.height[u]) {
                let p = self.stack.pop().unwrap();
                if let Some(l) = p.left.low {
                    self.side[l] = -1;
                }
            } else {
                break;
            }
        }
        // Trim the remaining top pair.
        if let Some(mut p) = self.stack.pop() {
            while let Some(h) = p.left.high {
                if self.dst[h] == u {
                    p.left.high = self.ref_edge[h];
                } else {
                    break;
                }
            }
            if p.left.high.is_none() {
                if let Some(l) = p.left.low {
                    self.ref_edge[l] = p.right.low;
                    self.side[l] = -1;
                    p.left.low = None;
                }
            }
            while let Some(h) = p.right.high {
                if self.dst[h] == u {
                    p.right.high = self.ref_edge[h];
                } else {
                    break;
                }
            }
            if p.right.high.is_none() {
                if let Some(l) = p.right.low {
                    self.ref_edge[l] = p.left.low;
                    self.side[l] = -1;
                    p.right.low = None;
                }
            }
            self.stack.push(p);
        }
    }
}

/// Stacked (Apollonian) triangulation on `m >= 3` vertices: 3m - 6 edges,
/// planar by construction. Faces are consumed round-robin, so the result is
/// deterministic in `m`.
pub fn maximal_planar(m: usize) -> Result<Graph, Error> {
    if m < 3 {
        return Err(Error::TooFewVertices { needed: 3, got: m });
    }
    let mut b = GraphBuilder::new(m);
    b.add_edge(0, 1).unwrap();
    b.add_edge(1, 2).unwrap();
    b.add_edge(0, 2).unwrap();
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2]];
    for (step, v) in (3..m).enumerate() {
        let idx = step % faces.len();
        let face = faces.swap_remove(idx);
        for &u in &face {
            b.add_edge(u, v).unwrap();
        }
        faces.push([face[0], face[1], v]);
        faces.push([face[0], face[2], v]);
        faces.push([face[1], face[2], v]);
    }
    Ok(b.build())
}

/// Stacked triangulation with the face choice driven by `rng`.
pub(crate) fn random_stacked_triangulation<R: Rng>(m: usize, rng: &mut R) -> Result<Graph, Error> {
    if m < 3 {
        return Err(Error::TooFewVertices { needed: 3, got: m });
    }
    let mut b = GraphBuilder::new(m);
    b.add_edge(0, 1).unwrap();
    b.add_edge(1, 2).unwrap();
    b.add_edge(0, 2).unwrap();
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2]];
    for v in 3..m {
        let idx = rng.gen_range(0..faces.len());
        let face = faces.swap_remove(idx);
        for &u in &face {
            b.add_edge(u, v).unwrap();
        }
        faces.push([face[0], face[1], v]);
        faces.push([face[0], face[2], v]);
        faces.push([face[1], face[2], v]);
    }
    Ok(b.build())
}

/// The 5-regular planar triangulation on 12 vertices and 30 edges.
///
/// Layout: apex 0, upper ring 1-5, lower ring 6-10 (staggered antiprism
/// fashion), apex 11.
pub fn icosahedron() -> Graph {
    let mut edges = Vec::with_capacity(30);
    for i in 0..5 {
        let a = 1 + i;
        let b = 6 + i;
        edges.push((0, a));
        edges.push((11, b));
        edges.push((a, 1 + (i + 1) % 5));
        edges.push((b, 6 + (i + 1) % 5));
        edges.push((a, b));
        edges.push((a, 6 + (i + 4) % 5));
    }
    let g = Graph::from_edges(12, &edges).expect("fixed edge list is valid");
    debug_assert_eq!(g.m(), 30);
    debug_assert!((0..12).all(|v| g.degree(v) == 5));
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn euler_filter_examples() {
        assert_eq!(euler_filter(&Graph::complete(5)), EulerVerdict::Nonplanar);
        assert_eq!(
            euler_filter(&Graph::complete_bipartite(3, 3)),
            EulerVerdict::Nonplanar
        );
        assert_eq!(euler_filter(&icosahedron()), EulerVerdict::Inconclusive);
    }

    #[test]
    fn kuratowski_graphs_rejected() {
        assert!(!is_planar(&Graph::complete(5)));
        assert!(!is_planar(&Graph::complete_bipartite(3, 3)));
    }

    #[test]
    fn small_and_sparse_graphs_accepted() {
        assert!(is_planar(&Graph::complete(4)));
        assert!(is_planar(&Graph::path(50)));
        assert!(is_planar(&Graph::cycle(17)));
        assert!(is_planar(&Graph::star(30)));
    }

    #[test]
    fn icosahedron_invariants() {
        let g = icosahedron();
        assert_eq!(g.n(), 12);
        assert_eq!(g.m(), 30);
        assert!((0..12).all(|v| g.degree(v) == 5));
        assert!(is_planar(&g));
        // diameter 3
        let mut max_dist = 0;
        for v in 0..12 {
            let mut dist = vec![usize::MAX; 12];
            dist[v] = 0;
            let mut q = std::collections::VecDeque::from([v]);
            while let Some(u) = q.pop_front() {
                for w in g.neighbors(u).iter() {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        q.push_back(w);
                    }
                }
            }
            max_dist = max_dist.max(*dist.iter().max().unwrap());
        }
        assert_eq!(max_dist, 3);
    }

    #[test]
    fn maximal_planar_edge_counts() {
        for m in 3..=12 {
            let g = maximal_planar(m).unwrap();
            assert_eq!(g.m(), 3 * m - 6, "m={m}");
            assert!(is_planar(&g), "m={m}");
        }
        assert_eq!(maximal_planar(5).unwrap().m(), 9);
        let g8 = maximal_planar(8).unwrap();
        assert!(g8.min_degree() >= 3);
        assert!(matches!(maximal_planar(2), Err(Error::TooFewVertices { .. })));
    }

    #[test]
    fn goldner_harary_is_planar() {
        // A maximal planar graph on 11 vertices, 27 edges.
        let g = Graph::from_edges(
            11,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (0, 4),
                (0, 6),
                (0, 7),
                (0, 9),
                (0, 10),
                (1, 2),
                (1, 3),
                (1, 5),
                (1, 6),
                (1, 8),
                (1, 9),
                (1, 10),
                (2, 3),
                (3, 4),
                (3, 5),
                (3, 6),
                (4, 6),
                (5, 6),
                (6, 7),
                (6, 8),
                (6, 9),
                (7, 9),
                (8, 9),
                (9, 10),
            ],
        )
        .unwrap();
        assert_eq!(g.m(), 27);
        assert!(is_planar(&g));
    }

    #[test]
    fn petersen_is_not_planar() {
        // No K5/K3,3 subgraph, but subdivisions of both.
        let g = Graph::from_edges(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        )
        .unwrap();
        assert!(!is_planar(&g));
    }

    #[test]
    fn k5_minus_edge_and_k33_minus_edge_are_planar() {
        let k5e = Graph::complete(5).without_edge(0, 1);
        assert!(is_planar(&k5e));
        let k33e = Graph::complete_bipartite(3, 3).without_edge(0, 3);
        assert!(is_planar(&k33e));
    }

    #[test]
    fn disjoint_copies_keep_verdicts() {
        let planar = Graph::disjoint_union(&[Graph::complete(4), Graph::complete(4)]).unwrap();
        assert!(is_planar(&planar));
        let mixed =
            Graph::disjoint_union(&[Graph::complete(4), Graph::complete(5)]).unwrap();
        assert!(!is_planar(&mixed));
    }

    #[test]
    fn long_path_no_stack_overflow() {
        let g = Graph::path(200_000);
        assert!(is_planar(&g));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn euler_filter_never_contradicts_lr(n in 1usize..9, mask in any::<u64>()) {
            let g = crate::graph::graph_from_mask(n, mask);
            if euler_filter(&g) == EulerVerdict::Nonplanar {
                prop_assert!(!is_planar(&g));
            }
        }

        #[test]
        fn random_triangulations_are_planar(m in 3usize..30, seed in any::<u64>()) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let g = random_stacked_triangulation(m, &mut rng).unwrap();
            prop_assert_eq!(g.m(), 3 * m - 6);
            prop_assert!(is_planar(&g));
        }
    }
}
