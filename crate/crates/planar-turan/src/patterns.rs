//! Quasi-double-star and caterpillar containment.
//!
//! A quasi-double star `W(h, k)` is the tree built from a three-vertex path
//! by attaching `h` extra leaves to one endpoint and `k` to the other, so it
//! has `h + k + 3` vertices. Containment here is always ordinary subgraph
//! containment, never induced.

use crate::graph::Graph;
use crate::Error;

/// Caterpillar patterns the brute-force oracle refuses to exceed.
pub const MAX_PATTERN_VERTICES: usize = 10;

/// The pair `(h, k)` defining a quasi-double star, stored with `h <= k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternSpec {
    h: usize,
    k: usize,
}

impl PatternSpec {
    /// Normalizing constructor; `W(h, k)` and `W(k, h)` are the same tree.
    pub fn new(h: usize, k: usize) -> Self {
        PatternSpec {
            h: h.min(k),
            k: h.max(k),
        }
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn leaf_total(&self) -> usize {
        self.h + self.k
    }

    /// Vertex count of the pattern tree: `h + k + 3`.
    pub fn vertex_count(&self) -> usize {
        self.h + self.k + 3
    }

    /// The pattern as a concrete tree: spine `0-1-2`, then `h` leaves on
    /// vertex 0 and `k` leaves on vertex 2.
    pub fn tree(&self) -> Graph {
        CaterpillarSpec::new(vec![self.h, 0, self.k]).tree()
    }
}

impl std::fmt::Debug for PatternSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "W({},{})", self.h, self.k)
    }
}

impl std::fmt::Display for PatternSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "W({},{})", self.h, self.k)
    }
}

/// A caterpillar: a spine path with `leaf_counts[i]` leaves on spine vertex i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaterpillarSpec {
    leaf_counts: Vec<usize>,
}

impl CaterpillarSpec {
    /// `leaf_counts` must be non-empty (spine length >= 1).
    pub fn new(leaf_counts: Vec<usize>) -> Self {
        assert!(!leaf_counts.is_empty(), "caterpillar spine must be non-empty");
        CaterpillarSpec { leaf_counts }
    }

    /// Double star S(h, k): an edge with h and k leaves on its endpoints.
    pub fn double_star(h: usize, k: usize) -> Self {
        CaterpillarSpec::new(vec![h, k])
    }

    pub fn spine_len(&self) -> usize {
        self.leaf_counts.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.leaf_counts.len() + self.leaf_counts.iter().sum::<usize>()
    }

    /// Concrete tree: spine vertices first, then leaves grouped by spine vertex.
    pub fn tree(&self) -> Graph {
        let l = self.leaf_counts.len();
        let mut edges = Vec::new();
        for i in 1..l {
            edges.push((i - 1, i));
        }
        let mut next = l;
        for (i, &s) in self.leaf_counts.iter().enumerate() {
            for _ in 0..s {
                edges.push((i, next));
                next += 1;
            }
        }
        Graph::from_edges(self.vertex_count(), &edges).expect("tree edges valid")
    }
}

/// An embedding of `W(h, k)` found by the fast detector.
#[derive(Clone, Debug)]
pub struct WitnessEmbedding {
    /// The spine: the h-side endpoint, the middle vertex, the k-side endpoint.
    pub spine: [usize; 3],
    /// `h` leaves attached to `spine[0]`.
    pub left_leaves: Vec<usize>,
    /// `k` leaves attached to `spine[2]`.
    pub right_leaves: Vec<usize>,
}

impl WitnessEmbedding {
    /// All `h + k + 3` embedded vertices.
    pub fn vertices(&self) -> Vec<usize> {
        let mut out = self.left_leaves.clone();
        out.extend_from_slice(&self.spine);
        out.extend_from_slice(&self.right_leaves);
        out
    }

    /// Checks distinctness and the presence of every tree edge in `g`.
    pub fn is_valid(&self, g: &Graph, p: PatternSpec) -> bool {
        let verts = self.vertices();
        if verts.len() != p.vertex_count() {
            return false;
        }
        let mut sorted = verts.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != verts.len() {
            return false;
        }
        let [u, v, w] = self.spine;
        g.has_edge(u, v)
            && g.has_edge(v, w)
            && self.left_leaves.len() == p.h()
            && self.right_leaves.len() == p.k()
            && self.left_leaves.iter().all(|&x| g.has_edge(u, x))
            && self.right_leaves.iter().all(|&x| g.has_edge(w, x))
    }
}

/// True iff `g` contains `W(h, k)` as a subgraph.
///
/// The criterion scans paths u-v-w and checks, with A = N(u)\{v,w} and
/// B = N(w)\{v,u}, that |A| >= h, |B| >= k and |A ∪ B| >= h + k. Those three
/// inequalities hold exactly when disjoint leaf sets of sizes h and k can be
/// drawn from A and B:
/// necessity is immediate; for sufficiency take min(h, |A \ B|) leaves from
/// A \ B, fill up to h from A ∩ B, and the k leaves for w then fit because
/// |B| minus the at most max(0, h - |A \ B|) borrowed elements is at least
/// |A ∪ B| - |A \ B| - (h - |A \ B|) = |A ∪ B| - h >= k.
pub fn contains_w(g: &Graph, p: PatternSpec) -> bool {
    scan_for_w(g, p).is_some()
}

/// Like [`contains_w`], returning one concrete embedding.
pub fn contains_w_witness(g: &Graph, p: PatternSpec) -> Option<WitnessEmbedding> {
    scan_for_w(g, p)
}

/// `g` is `W(h, k)`-free iff it has no `W(h, k)` subgraph.
pub fn is_free(g: &Graph, p: PatternSpec) -> bool {
    !contains_w(g, p)
}

fn scan_for_w(g: &Graph, p: PatternSpec) -> Option<WitnessEmbedding> {
    let (h, k) = (p.h(), p.k());
    if g.n() < p.vertex_count() {
        return None;
    }
    // The k-side endpoint needs degree k+1, so Δ bounds containment.
    if g.max_degree() < k + 1 {
        return None;
    }
    let degrees: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    for v in g.vertices() {
        if degrees[v] < 2 {
            continue;
        }
        let nbrs: Vec<usize> = g.neighbors(v).iter().collect();
        for &u in &nbrs {
            if degrees[u] < h + 1 {
                continue;
            }
            for &w in &nbrs {
                if w == u || degrees[w] < k + 1 {
                    continue;
                }
                let adj_uw = g.has_edge(u, w);
                let a = degrees[u] - 1 - usize::from(adj_uw);
                let b = degrees[w] - 1 - usize::from(adj_uw);
                if a < h || b < k {
                    continue;
                }
                // |A ∩ B| = |N(u) ∩ N(w)| - 1: v lies in both, u and w in neither.
                let common = common_neighbor_count(g, u, w, &degrees);
                let union = a + b - (common - 1);
                if union >= h + k {
                    return Some(build_embedding(g, p, u, v, w));
                }
            }
        }
    }
    None
}

fn common_neighbor_count(g: &Graph, u: usize, w: usize, degrees: &[usize]) -> usize {
    // Walk the sparser list; degrees are small on the hot path.
    let (small, other) = if degrees[u] <= degrees[w] { (u, w) } else { (w, u) };
    g.neighbors(small)
        .iter()
        .filter(|&x| g.has_edge(x, other))
        .count()
}

fn build_embedding(g: &Graph, p: PatternSpec, u: usize, v: usize, w: usize) -> WitnessEmbedding {
    let (h, k) = (p.h(), p.k());
    let mut a = g.neighbors(u).clone();
    a.remove(v);
    a.remove(w);
    let mut b = g.neighbors(w).clone();
    b.remove(v);
    b.remove(u);

    // Greedy split per the defect argument: prefer A \ B for u's leaves.
    let mut left = Vec::with_capacity(h);
    for x in a.iter() {
        if left.len() < h && !b.contains(x) {
            left.push(x);
        }
    }
    for x in a.iter() {
        if left.len() < h && !left.contains(&x) {
            left.push(x);
        }
    }
    let mut right = Vec::with_capacity(k);
    for x in b.iter() {
        if right.len() < k && !left.contains(&x) {
            right.push(x);
        }
    }
    debug_assert_eq!(left.len(), h);
    debug_assert_eq!(right.len(), k);
    WitnessEmbedding {
        spine: [u, v, w],
        left_leaves: left,
        right_leaves: right,
    }
}

/// Exhaustive injective-homomorphism search: does `g` contain `pattern` as a
/// subgraph? Exact for any pattern with at most [`MAX_PATTERN_VERTICES`]
/// vertices; this is the ground-truth oracle the fast detector is checked
/// against.
pub fn contains_subgraph_oracle(g: &Graph, pattern: &Graph) -> Result<bool, Error> {
    if pattern.n() > MAX_PATTERN_VERTICES {
        return Err(Error::PatternTooLarge {
            got: pattern.n(),
            max: MAX_PATTERN_VERTICES,
        });
    }
    if pattern.n() > g.n() || pattern.m() > g.m() {
        return Ok(false);
    }
    // Order pattern vertices so each (after the first per component) touches
    // an earlier one; anchored candidates prune hard.
    let order = connectivity_order(pattern);
    let pat_deg: Vec<usize> = (0..pattern.n()).map(|v| pattern.degree(v)).collect();
    let host_deg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut image = vec![usize::MAX; pattern.n()];
    let mut used = vec![false; g.n()];

    fn backtrack(
        g: &Graph,
        pattern: &Graph,
        order: &[usize],
        pat_deg: &[usize],
        host_deg: &[usize],
        image: &mut [usize],
        used: &mut [bool],
        pos: usize,
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let pv = order[pos];
        let anchors: Vec<usize> = pattern
            .neighbors(pv)
            .iter()
            .filter(|&q| image[q] != usize::MAX)
            .collect();
        let candidates: Vec<usize> = match anchors.first() {
            Some(&q) => g.neighbors(image[q]).iter().collect(),
            None => (0..g.n()).collect(),
        };
        for c in candidates {
            if used[c] || host_deg[c] < pat_deg[pv] {
                continue;
            }
            if anchors.iter().any(|&q| !g.has_edge(c, image[q])) {
                continue;
            }
            image[pv] = c;
            used[c] = true;
            if backtrack(g, pattern, order, pat_deg, host_deg, image, used, pos + 1) {
                return true;
            }
            used[c] = false;
            image[pv] = usize::MAX;
        }
        false
    }

    Ok(backtrack(
        g,
        pattern,
        &order,
        &pat_deg,
        &host_deg,
        &mut image,
        &mut used,
        0,
    ))
}

fn connectivity_order(pattern: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(pattern.n());
    let mut seen = vec![false; pattern.n()];
    let mut verts: Vec<usize> = (0..pattern.n()).collect();
    verts.sort_by_key(|&v| std::cmp::Reverse(pattern.degree(v)));
    for &start in &verts {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        order.push(start);
        while let Some(u) = queue.pop_front() {
            for v in pattern.neighbors(u).iter() {
                if !seen[v] {
                    seen[v] = true;
                    order.push(v);
                    queue.push_back(v);
                }
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planarity::{icosahedron, maximal_planar};
    use proptest::prelude::*;

    #[test]
    fn pattern_normalization_and_size() {
        let p = PatternSpec::new(5, 1);
        assert_eq!((p.h(), p.k()), (1, 5));
        assert_eq!(p.vertex_count(), 9);
        assert_eq!(p.tree().n(), 9);
        assert_eq!(p.tree().m(), 8);
    }

    #[test]
    fn caterpillar_special_cases() {
        // W(h,k) is the spine-3 caterpillar with no middle leaves.
        let w = CaterpillarSpec::new(vec![2, 0, 3]).tree();
        assert_eq!(w.n(), 8);
        assert_eq!(w.m(), 7);
        // S(h,k) is the spine-2 caterpillar.
        let s = CaterpillarSpec::double_star(2, 2).tree();
        assert_eq!(s.n(), 6);
        assert_eq!(s.m(), 5);
    }

    #[test]
    fn star_host_has_no_quasi_double_star() {
        let star = Graph::star(6);
        for h in 1..=2 {
            for k in h..=3 {
                assert!(!contains_w(&star, PatternSpec::new(h, k)), "W({h},{k})");
            }
        }
    }

    #[test]
    fn path5_contains_w11() {
        assert!(contains_w(&Graph::path(5), PatternSpec::new(1, 1)));
        assert!(!contains_w(&Graph::path(4), PatternSpec::new(1, 1)));
    }

    #[test]
    fn icosahedron_verdicts() {
        let g = icosahedron();
        assert!(!contains_w(&g, PatternSpec::new(1, 5)));
        assert!(!contains_w(&g, PatternSpec::new(2, 5)));
        assert!(contains_w(&g, PatternSpec::new(1, 4)));
        // Cross-check the three verdicts against the exhaustive oracle.
        assert!(!contains_subgraph_oracle(&g, &PatternSpec::new(1, 5).tree()).unwrap());
        assert!(contains_subgraph_oracle(&g, &PatternSpec::new(1, 4).tree()).unwrap());
    }

    #[test]
    fn small_block_is_always_free() {
        for (h, k) in [(1, 2), (1, 4), (2, 3), (2, 5)] {
            let p = PatternSpec::new(h, k);
            let g = maximal_planar(h + k + 2).unwrap();
            assert!(is_free(&g, p), "W({h},{k})");
        }
    }

    #[test]
    fn k7_contains_w12() {
        assert!(!is_free(&Graph::complete(7), PatternSpec::new(1, 2)));
    }

    #[test]
    fn edgeless_graph_is_free() {
        assert!(is_free(&Graph::empty(12), PatternSpec::new(1, 2)));
    }

    #[test]
    fn oracle_examples() {
        assert!(contains_subgraph_oracle(&Graph::complete(4), &Graph::complete(3)).unwrap());
        assert!(!contains_subgraph_oracle(&Graph::cycle(5), &Graph::path(6)).unwrap());
        let big = Graph::empty(11);
        assert!(matches!(
            contains_subgraph_oracle(&Graph::complete(12), &big),
            Err(Error::PatternTooLarge { .. })
        ));
    }

    #[test]
    fn witness_embeddings_are_valid() {
        let g = icosahedron();
        let p = PatternSpec::new(1, 4);
        let emb = contains_w_witness(&g, p).expect("icosahedron contains W(1,4)");
        assert!(emb.is_valid(&g, p));

        let k7 = Graph::complete(7);
        let p = PatternSpec::new(2, 2);
        let emb = contains_w_witness(&k7, p).expect("K7 contains W(2,2)");
        assert!(emb.is_valid(&k7, p));
    }

    #[test]
    fn detector_matches_oracle_on_masks() {
        // Dense sweep over all graphs on 6 vertices for the one pattern that
        // fits, plus spot checks on 7.
        let p = PatternSpec::new(1, 2);
        let tree = p.tree();
        for mask in 0..(1u64 << 15) {
            let g = crate::graph::graph_from_mask(6, mask);
            assert_eq!(
                contains_w(&g, p),
                contains_subgraph_oracle(&g, &tree).unwrap(),
                "mask {mask}"
            );
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]
        #[test]
        fn detector_symmetric_and_matches_oracle(n in 6usize..9, mask in any::<u64>(), h in 1usize..3, k in 2usize..6) {
            let g = crate::graph::graph_from_mask(n, mask);
            let p = PatternSpec::new(h, k);
            let fast = contains_w(&g, p);
            prop_assert_eq!(fast, contains_w(&g, PatternSpec::new(k, h)));
            let oracle = contains_subgraph_oracle(&g, &p.tree()).unwrap();
            prop_assert_eq!(fast, oracle);
            if fast {
                // Necessary degree condition.
                prop_assert!(g.max_degree() >= p.k() + 1);
            }
        }

        #[test]
        fn adding_edges_is_monotone(n in 6usize..9, mask in any::<u64>(), extra in any::<u64>()) {
            let p = PatternSpec::new(1, 2);
            let g = crate::graph::graph_from_mask(n, mask);
            let denser = crate::graph::graph_from_mask(n, mask | extra);
            if contains_w(&g, p) {
                prop_assert!(contains_w(&denser, p));
            }
        }
    }
}
