//! Homomorphisms into the 5-cycle by backtracking.

use super::graph::{iter_bits, SmallGraph};

/// Vertex limit for the backtracking search.
pub const MAX_C5_COLORING_VERTICES: usize = 20;

/// A map `V(G) -> {0..4}` sending every edge onto an edge of `C₅` (consecutive
/// residues mod 5), or `None` if no such map exists. Vertices are visited in
/// breadth-first order and colors tried in ascending order, so bipartite graphs
/// land on classes 0 and 1.
pub fn is_c5_colorable(g: &SmallGraph) -> Option<Vec<u8>> {
    assert!(
        g.n() <= MAX_C5_COLORING_VERTICES,
        "C5 coloring is limited to {MAX_C5_COLORING_VERTICES} vertices"
    );
    c5_coloring(g)
}

/// Same search without the size guard.
pub fn c5_coloring(g: &SmallGraph) -> Option<Vec<u8>> {
    let order = bfs_order(g);
    let mut colors = vec![u8::MAX; g.n()];
    if assign(g, &order, 0, &mut colors) {
        Some(colors)
    } else {
        None
    }
}

fn assign(g: &SmallGraph, order: &[usize], idx: usize, colors: &mut [u8]) -> bool {
    let Some(&v) = order.get(idx) else {
        return true;
    };
    // allowed[c] bit set iff color c is compatible with every colored neighbor
    let mut allowed: u8 = 0b11111;
    for u in iter_bits(g.neighbors(v)) {
        let c = colors[u];
        if c != u8::MAX {
            allowed &= 1 << ((c + 1) % 5) | 1 << ((c + 4) % 5);
        }
    }
    for c in 0..5u8 {
        if allowed >> c & 1 == 1 {
            colors[v] = c;
            if assign(g, order, idx + 1, colors) {
                return true;
            }
        }
    }
    colors[v] = u8::MAX;
    false
}

fn bfs_order(g: &SmallGraph) -> Vec<usize> {
    let mut seen = 0u32;
    let mut order = Vec::with_capacity(g.n());
    for s in 0..g.n() {
        if seen >> s & 1 == 1 {
            continue;
        }
        seen |= 1 << s;
        let start = order.len();
        order.push(s);
        let mut head = start;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for w in iter_bits(g.neighbors(u) & !seen) {
                seen |= 1 << w;
                order.push(w);
            }
        }
    }
    order
}
