//! Brute-force reference deciders, kept independent of the production
//! algorithms so the two can referee each other.

use crate::graph::Graph;
use crate::Error;

/// Largest host the minor search will take; 7^8 assignments is the ceiling.
pub const MAX_ORACLE_VERTICES: usize = 8;

/// Planarity by Wagner's characterization: planar iff neither K5 nor K3,3 is
/// a minor. Branch sets are enumerated exhaustively, so this is exact (and
/// exponential; hosts are capped at [`MAX_ORACLE_VERTICES`] vertices).
pub fn planar_by_forbidden_minors(g: &Graph) -> Result<bool, Error> {
    if g.n() > MAX_ORACLE_VERTICES {
        return Err(Error::GraphTooLarge {
            got: g.n(),
            max: MAX_ORACLE_VERTICES,
        });
    }
    if g.n() <= 4 || g.m() <= 8 {
        return Ok(true);
    }
    let k5_edges: Vec<(usize, usize)> = (0..5)
        .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
        .collect();
    let k33_edges: Vec<(usize, usize)> = (0..3)
        .flat_map(|a| (3..6).map(move |b| (a, b)))
        .collect();
    // All five K5 branch sets are interchangeable; K3,3 is symmetric within
    // each side. Restricting to canonical assignments prunes those factors.
    Ok(!has_minor(g, 5, &k5_edges, &[(0, 5)]) && !has_minor(g, 6, &k33_edges, &[(0, 3), (3, 6)]))
}

/// Does `g` have the graph on `parts` vertices with edge list `required` as a
/// minor? Tries every assignment of host vertices to branch sets (or none),
/// canonical up to permutations inside each `sym` range.
fn has_minor(g: &Graph, parts: usize, required: &[(usize, usize)], sym: &[(usize, usize)]) -> bool {
    let n = g.n();
    if n < parts {
        return false;
    }
    let full = 1usize << n;
    // Connectivity and neighborhood of every vertex subset, over bitmasks.
    let mut nbr = vec![0usize; full];
    for mask in 1..full {
        let v = mask.trailing_zeros() as usize;
        nbr[mask] = nbr[mask & (mask - 1)] | g.neighbors(v).word0() as usize;
    }
    let mut connected = vec![false; full];
    for mask in 1..full {
        if mask.count_ones() == 1 {
            connected[mask] = true;
            continue;
        }
        let start = mask.trailing_zeros() as usize;
        let mut seen = 1usize << start;
        loop {
            let grown = (seen | nbr[seen]) & mask;
            if grown == seen {
                break;
            }
            seen = grown;
        }
        connected[mask] = seen == mask;
    }

    let ctx = MinorCtx {
        n,
        parts,
        required,
        sym,
        nbr: &nbr,
        connected: &connected,
    };
    let mut branch = vec![0usize; parts];
    assign(&ctx, 0, &mut branch)
}

struct MinorCtx<'a> {
    n: usize,
    parts: usize,
    required: &'a [(usize, usize)],
    sym: &'a [(usize, usize)],
    nbr: &'a [usize],
    connected: &'a [bool],
}

fn assign(ctx: &MinorCtx<'_>, v: usize, branch: &mut [usize]) -> bool {
    if v == ctx.n {
        if branch.iter().any(|&b| b == 0 || !ctx.connected[b]) {
            return false;
        }
        return ctx
            .required
            .iter()
            .all(|&(a, b)| branch[a] & ctx.nbr[branch[b]] != 0);
    }
    for part in 0..ctx.parts {
        // Canonical assignments only: inside a symmetric range, a part may be
        // opened only after its predecessor.
        let blocked = ctx
            .sym
            .iter()
            .any(|&(lo, hi)| part > lo && part < hi && branch[part - 1] == 0);
        if blocked {
            continue;
        }
        branch[part] |= 1 << v;
        if assign(ctx, v + 1, branch) {
            branch[part] &= !(1 << v);
            return true;
        }
        branch[part] &= !(1 << v);
    }
    assign(ctx, v + 1, branch)
}
