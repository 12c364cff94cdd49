//! Isomorph-free graph enumeration by canonical vertex augmentation.
//!
//! Graphs on k+1 vertices are generated from representatives on k vertices by
//! attaching a new vertex to every subset of the old ones. A child survives
//! only if deleting a vertex from the canonical-last orbit reproduces the
//! parent's canonical form; with a per-parent dedup set that yields exactly
//! one representative per isomorphism class. Filters closed under vertex
//! deletion prune whole subtrees soundly.

use std::collections::HashSet;

use crate::canon::{canonical_form, canonical_labeling, CanonicalForm};
use crate::graph::Graph;
use crate::Error;

/// Hard cap for full enumeration.
pub const MAX_ENUM_VERTICES: usize = 10;

/// How a candidate graph fared against the active filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Admit {
    Accept,
    RejectPlanarity,
    RejectPattern,
    Reject,
}

/// Per-rule counters accumulated during enumeration.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PruneStats {
    /// Candidate children examined (augmentations attempted).
    pub candidates: u64,
    pub planarity_rejected: u64,
    pub pattern_rejected: u64,
    pub other_rejected: u64,
    /// Candidates discarded by the canonical parent rule or per-parent dedup.
    pub duplicate_rejected: u64,
    /// Representatives that entered the tree.
    pub accepted: u64,
}

impl PruneStats {
    pub fn merge(&mut self, other: &PruneStats) {
        self.candidates += other.candidates;
        self.planarity_rejected += other.planarity_rejected;
        self.pattern_rejected += other.pattern_rejected;
        self.other_rejected += other.other_rejected;
        self.duplicate_rejected += other.duplicate_rejected;
        self.accepted += other.accepted;
    }
}

/// Visits exactly one representative of every isomorphism class on `n`
/// vertices that passes `filter`, which must be closed under vertex deletion.
/// Returns the number of classes visited.
pub fn for_each_class<F, V>(n: usize, filter: F, mut visit: V) -> Result<u64, Error>
where
    F: Fn(&Graph) -> bool,
    V: FnMut(&Graph),
{
    if n == 0 || n > MAX_ENUM_VERTICES {
        return Err(Error::GraphTooLarge {
            got: n,
            max: MAX_ENUM_VERTICES,
        });
    }
    let admit = |g: &Graph| {
        if filter(g) {
            Admit::Accept
        } else {
            Admit::Reject
        }
    };
    let mut count = 0;
    let mut stats = PruneStats::default();
    let root = Graph::empty(1);
    if admit(&root) != Admit::Accept {
        return Ok(0);
    }
    let root_form = canonical_form(&root)?;
    let mut on_class = |g: &Graph, _form: &CanonicalForm| {
        if g.n() == n {
            count += 1;
            visit(g);
        }
    };
    if n == 1 {
        on_class(&root, &root_form);
        return Ok(1);
    }
    descend(&root, root_form, n, &admit, &mut on_class, &mut stats, &mut || false)?;
    Ok(count)
}

/// Convenience collector for tests and small sweeps.
pub fn collect_classes<F>(n: usize, filter: F) -> Result<Vec<Graph>, Error>
where
    F: Fn(&Graph) -> bool,
{
    let mut out = Vec::new();
    for_each_class(n, filter, |g| out.push(g.clone()))?;
    Ok(out)
}

/// Expands `parent` by one vertex at a time up to `target` vertices, calling
/// `on_class` for every accepted representative (at every intermediate size).
/// `should_stop` is polled per candidate so callers can enforce budgets.
pub(crate) fn descend<F, V, S>(
    parent: &Graph,
    parent_form: CanonicalForm,
    target: usize,
    admit: &F,
    on_class: &mut V,
    stats: &mut PruneStats,
    should_stop: &mut S,
) -> Result<(), Error>
where
    F: Fn(&Graph) -> Admit,
    V: FnMut(&Graph, &CanonicalForm),
    S: FnMut() -> bool,
{
    let k = parent.n();
    debug_assert!(k < target);
    let mut seen: HashSet<u128> = HashSet::new();
    for mask in 0u64..(1u64 << k) {
        if should_stop() {
            return Ok(());
        }
        stats.candidates += 1;
        let child = attach_vertex(parent, mask);
        match admit(&child) {
            Admit::Accept => {}
            Admit::RejectPlanarity => {
                stats.planarity_rejected += 1;
                continue;
            }
            Admit::RejectPattern => {
                stats.pattern_rejected += 1;
                continue;
            }
            Admit::Reject => {
                stats.other_rejected += 1;
                continue;
            }
        }
        let (child_form, labeling) = canonical_labeling(&child)?;
        if !seen.insert(child_form.bits()) {
            stats.duplicate_rejected += 1;
            continue;
        }
        // Canonical parent rule: the child belongs to the parent obtained by
        // deleting a vertex from the canonical-last orbit. Any single optimal
        // labeling exposes a representative of that orbit.
        let last = labeling
            .iter()
            .position(|&pos| pos == k)
            .expect("labeling is a bijection");
        let reduced = child.delete_vertex(last);
        if canonical_form(&reduced)? != parent_form {
            stats.duplicate_rejected += 1;
            continue;
        }
        stats.accepted += 1;
        on_class(&child, &child_form);
        if child.n() < target {
            descend(&child, child_form, target, admit, on_class, stats, should_stop)?;
        }
    }
    Ok(())
}

fn attach_vertex(parent: &Graph, mask: u64) -> Graph {
    let k = parent.n();
    let mut b = crate::graph::GraphBuilder::new(k + 1);
    for (u, v) in parent.edges() {
        b.add_edge(u, v).unwrap();
    }
    for u in 0..k {
        if (mask >> u) & 1 == 1 {
            b.add_edge(u, k).unwrap();
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{is_free, PatternSpec};
    use crate::planarity::is_planar;

    #[test]
    fn unfiltered_counts_match_known_sequence() {
        // Graphs per isomorphism class: 1, 2, 4, 11, 34, 156, 1044.
        let expect = [1u64, 2, 4, 11, 34, 156, 1044];
        for (i, &want) in expect.iter().enumerate() {
            let n = i + 1;
            let got = for_each_class(n, |_| true, |_| {}).unwrap();
            assert_eq!(got, want, "n={n}");
        }
    }

    #[test]
    fn planar_filter_drops_k5_only_at_five() {
        let planar_only = for_each_class(5, is_planar, |_| {}).unwrap();
        assert_eq!(planar_only, 33); // 34 classes minus K5
    }

    #[test]
    fn small_pattern_filter_is_vacuous_below_pattern_size() {
        // W(1,2) needs 6 vertices, so all 4 classes on 3 vertices pass.
        let p = PatternSpec::new(1, 2);
        let count = for_each_class(3, |g| is_free(g, p), |_| {}).unwrap();
        assert_eq!(count, 4);
    }

    #[test]
    fn representatives_are_pairwise_nonisomorphic() {
        let classes = collect_classes(5, |_| true).unwrap();
        let mut forms: Vec<u128> = classes
            .iter()
            .map(|g| canonical_form(g).unwrap().bits())
            .collect();
        forms.sort_unstable();
        forms.dedup();
        assert_eq!(forms.len(), classes.len());
    }

    #[test]
    fn size_cap_enforced() {
        assert!(matches!(
            for_each_class(11, |_| true, |_| {}),
            Err(Error::GraphTooLarge { .. })
        ));
        assert!(matches!(
            for_each_class(0, |_| true, |_| {}),
            Err(Error::GraphTooLarge { .. })
        ));
    }
}
