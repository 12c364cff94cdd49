//! Canonical labeling for small graphs.
//!
//! Degree-partition refinement fixes an ordered equitable partition; a
//! backtracking pass then minimizes the column-major upper-triangle adjacency
//! bit string over all labelings consistent with the cell order. Isomorphic
//! graphs map to identical forms, and the packed form doubles as a total
//! order for deterministic tie-breaking.

use crate::graph::{Graph, GraphBuilder};
use crate::Error;

/// Largest graph the canonical labeler accepts (the packed form must fit in
/// 120 bits).
pub const MAX_CANON_VERTICES: usize = 16;

/// Relabeling-invariant encoding of a graph on at most 16 vertices.
///
/// `bits` holds the upper triangle of the adjacency matrix of the canonical
/// relabeling in column-major order — the same bit order graph6 uses — packed
/// so that integer comparison equals lexicographic comparison of the bit
/// string.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: u8,
    bits: u128,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    /// Rebuilds the canonical representative graph.
    pub fn to_graph(&self) -> Graph {
        let n = self.n as usize;
        let total = n * n.saturating_sub(1) / 2;
        let mut b = GraphBuilder::new(n);
        let mut pos = 0;
        for v in 1..n {
            for u in 0..v {
                if (self.bits >> (total - 1 - pos)) & 1 == 1 {
                    b.add_edge(u, v).unwrap();
                }
                pos += 1;
            }
        }
        b.build()
    }
}

impl std::fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CanonicalForm(n={}, bits={:#x})", self.n, self.bits)
    }
}

/// Canonical form of `g`.
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, Error> {
    Ok(canonical_labeling(g)?.0)
}

/// Canonical form plus one labeling achieving it (`labeling[v]` is the
/// canonical position of vertex `v`).
pub fn canonical_labeling(g: &Graph) -> Result<(CanonicalForm, Vec<usize>), Error> {
    let n = g.n();
    if n > MAX_CANON_VERTICES {
        return Err(Error::GraphTooLarge {
            got: n,
            max: MAX_CANON_VERTICES,
        });
    }
    if n == 0 {
        return Ok((CanonicalForm { n: 0, bits: 0 }, Vec::new()));
    }
    let rows: Vec<u64> = (0..n).map(|v| g.neighbors(v).word0()).collect();
    let cells = refine(&rows, n);

    let mut search = CanonSearch {
        rows: &rows,
        n,
        cells: &cells,
        placed: Vec::with_capacity(n),
        placed_mask: 0,
        blocks: vec![0u64; n],
        best_blocks: None,
        best_order: Vec::new(),
    };
    search.descend(0, true);

    let best_order = search.best_order;
    let blocks = search.best_blocks.expect("at least one labeling explored");
    let mut bits: u128 = 0;
    for (j, &block) in blocks.iter().enumerate().take(n).skip(1) {
        bits = (bits << j) | block as u128;
    }
    let mut labeling = vec![0usize; n];
    for (pos, &v) in best_order.iter().enumerate() {
        labeling[v] = pos;
    }
    Ok((CanonicalForm { n: n as u8, bits }, labeling))
}

/// Equitable refinement starting from the degree partition. Cells are kept in
/// an order determined only by invariants (degree, then neighbor counts into
/// earlier cells), so the cell sequence itself is isomorphism-invariant.
fn refine(rows: &[u64], n: usize) -> Vec<Vec<usize>> {
    let degree = |v: usize| rows[v].count_ones() as usize;
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut by_degree: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in 0..n {
        by_degree.entry(degree(v)).or_default().push(v);
    }
    for (_, cell) in by_degree {
        cells.push(cell);
    }
    loop {
        // Signature of v: count of neighbors in each current cell.
        let sig = |v: usize| -> Vec<usize> {
            cells
                .iter()
                .map(|c| c.iter().filter(|&&u| rows[v] >> u & 1 == 1).count())
                .collect()
        };
        let mut next: Vec<Vec<usize>> = Vec::new();
        let mut changed = false;
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut groups: std::collections::BTreeMap<Vec<usize>, Vec<usize>> = Default::default();
            for &v in cell {
                groups.entry(sig(v)).or_default().push(v);
            }
            if groups.len() > 1 {
                changed = true;
            }
            for (_, sub) in groups {
                next.push(sub);
            }
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}

struct CanonSearch<'a> {
    rows: &'a [u64],
    n: usize,
    cells: &'a [Vec<usize>],
    placed: Vec<usize>,
    placed_mask: u64,
    blocks: Vec<u64>,
    best_blocks: Option<Vec<u64>>,
    best_order: Vec<usize>,
}

impl CanonSearch<'_> {
    /// Adjacency of `cand` to the placed prefix, packed so the earliest
    /// position is the most significant bit. Integer order on blocks is then
    /// lexicographic order on the bit string.
    fn block_of(&self, cand: usize) -> u64 {
        let p = self.placed.len();
        let mut block = 0u64;
        for (i, &u) in self.placed.iter().enumerate() {
            block |= ((self.rows[cand] >> u) & 1) << (p - 1 - i);
        }
        block
    }

    fn cell_of_position(&self, pos: usize) -> usize {
        let mut total = 0;
        for (i, c) in self.cells.iter().enumerate() {
            total += c.len();
            if pos < total {
                return i;
            }
        }
        unreachable!("position within vertex count")
    }

    /// `tight` means the prefix equals the best prefix found so far; only
    /// then can a larger block be pruned against it.
    fn descend(&mut self, pos: usize, tight: bool) {
        if pos == self.n {
            let candidate = &self.blocks[..self.n];
            let better = match &self.best_blocks {
                None => true,
                Some(best) => candidate < &best[..],
            };
            if better {
                self.best_blocks = Some(candidate.to_vec());
                self.best_order = self.placed.clone();
            }
            return;
        }
        let cell_idx = self.cell_of_position(pos);
        let in_cell: Vec<usize> = self.cells[cell_idx]
            .iter()
            .copied()
            .filter(|&v| self.placed_mask >> v & 1 == 0)
            .collect();
        // Only candidates achieving the minimal next block can start a
        // lexicographically minimal completion.
        let min_block = in_cell.iter().map(|&v| self.block_of(v)).min().unwrap();
        if let (true, Some(best)) = (tight, &self.best_blocks) {
            if min_block > best[pos] {
                return;
            }
        }
        let mut tried: Vec<usize> = Vec::new();
        for &cand in &in_cell {
            if self.block_of(cand) != min_block {
                continue;
            }
            // Twins are interchangeable by an automorphism; one suffices.
            let is_twin_of_tried = tried.iter().any(|&t| {
                let outside = !(self.placed_mask | (1 << cand) | (1 << t));
                (self.rows[cand] ^ self.rows[t]) & outside == 0
            });
            if is_twin_of_tried {
                continue;
            }
            tried.push(cand);

            self.blocks[pos] = min_block;
            self.placed.push(cand);
            self.placed_mask |= 1 << cand;
            let child_tight = match (tight, &self.best_blocks) {
                (true, Some(best)) => min_block == best[pos],
                (true, None) => true,
                (false, _) => false,
            };
            self.descend(pos + 1, child_tight);
            self.placed_mask &= !(1 << cand);
            self.placed.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::graph_from_mask;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn canon(g: &Graph) -> CanonicalForm {
        canonical_form(g).unwrap()
    }

    #[test]
    fn triangle_under_all_labelings() {
        let tri = Graph::complete(3);
        let base = canon(&tri);
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        for p in perms {
            let relabeled = tri.relabeled(&p);
            assert_eq!(canon(&relabeled), base);
        }
    }

    #[test]
    fn path_and_triangle_differ() {
        assert_ne!(canon(&Graph::path(3)), canon(&Graph::complete(3)));
    }

    #[test]
    fn eleven_classes_on_four_vertices() {
        // Brute force over all 2^6 labeled graphs, deduplicated by form.
        let mut forms = HashSet::new();
        for mask in 0..(1u64 << 6) {
            forms.insert(canon(&graph_from_mask(4, mask)));
        }
        assert_eq!(forms.len(), 11);
    }

    #[test]
    fn thirty_four_classes_on_five_vertices() {
        let mut forms = HashSet::new();
        for mask in 0..(1u64 << 10) {
            forms.insert(canon(&graph_from_mask(5, mask)));
        }
        assert_eq!(forms.len(), 34);
    }

    #[test]
    fn labeling_reproduces_form() {
        for mask in [0u64, 0b1011, 0x155, 0x2aa, 0x3ff] {
            let g = graph_from_mask(5, mask);
            let (form, labeling) = canonical_labeling(&g).unwrap();
            let relabeled = g.relabeled(&labeling);
            assert_eq!(canon(&relabeled), form);
            assert_eq!(relabeled, form.to_graph());
        }
    }

    #[test]
    fn size_cap() {
        assert!(matches!(
            canonical_form(&Graph::empty(17)),
            Err(Error::GraphTooLarge { .. })
        ));
    }

    #[test]
    fn highly_symmetric_graphs_are_fast() {
        // Twin skipping keeps the empty and complete graphs linear.
        canon(&Graph::empty(16));
        canon(&Graph::complete(16));
        canon(&Graph::complete_bipartite(8, 8));
        // Disjoint matchings exercise non-twin automorphisms.
        let matching = Graph::from_edges(
            12,
            &[(0, 1), (2, 3), (4, 5), (6, 7), (8, 9), (10, 11)],
        )
        .unwrap();
        canon(&matching);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]
        #[test]
        fn invariant_under_relabeling(n in 1usize..8, mask in any::<u64>(), seed in any::<u64>()) {
            let g = graph_from_mask(n, mask);
            // Fisher-Yates from the seed.
            let mut perm: Vec<usize> = (0..n).collect();
            let mut state = seed | 1;
            for i in (1..n).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let j = (state >> 33) as usize % (i + 1);
                perm.swap(i, j);
            }
            let relabeled = g.relabeled(&perm);
            prop_assert_eq!(canon(&g), canon(&relabeled));
        }
    }
}
