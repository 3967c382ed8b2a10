//! Canonical labeling by color refinement plus individualization.
//!
//! Leaves of the search tree are compared as relabeled graphs and the smallest
//! one wins. Twin vertices inside the target cell are explored once, which keeps
//! blow-ups and sparse graphs cheap.

use super::graph::SmallGraph;

/// Canonical form of `g` and the permutation (`perm[v]` = new label of `v`)
/// mapping `g` onto it.
pub fn canonical_form(g: &SmallGraph) -> (SmallGraph, Vec<usize>) {
    let all: Vec<usize> = (0..g.n()).collect();
    canonical_form_with_partition(g, &[all])
}

/// Canonical form respecting an ordered vertex partition: vertices of cell `i`
/// receive labels before those of cell `i+1`, and two inputs get the same form iff
/// some isomorphism maps each cell onto the cell with the same index.
pub fn canonical_form_with_partition(
    g: &SmallGraph,
    cells: &[Vec<usize>],
) -> (SmallGraph, Vec<usize>) {
    let cells: Vec<Vec<usize>> = cells.iter().filter(|c| !c.is_empty()).cloned().collect();
    debug_assert_eq!(cells.iter().map(Vec::len).sum::<usize>(), g.n());
    let mut best: Option<(SmallGraph, Vec<usize>)> = None;
    search(g, refine(g, cells), &mut best);
    best.unwrap_or_else(|| (*g, Vec::new()))
}

pub fn is_isomorphic(a: &SmallGraph, b: &SmallGraph) -> bool {
    a.n() == b.n()
        && a.edge_count() == b.edge_count()
        && canonical_form(a).0 == canonical_form(b).0
}

fn search(g: &SmallGraph, cells: Vec<Vec<usize>>, best: &mut Option<(SmallGraph, Vec<usize>)>) {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let mut perm = vec![0; g.n()];
        for (label, cell) in cells.iter().enumerate() {
            perm[cell[0]] = label;
        }
        let candidate = g.relabel(&perm);
        if best.as_ref().is_none_or(|(b, _)| candidate < *b) {
            *best = Some((candidate, perm));
        }
        return;
    };
    let cell = &cells[target];
    let mut tried: Vec<usize> = Vec::new();
    for &v in cell {
        if tried.iter().any(|&u| are_twins(g, u, v)) {
            continue;
        }
        tried.push(v);
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..target]);
        next.push(vec![v]);
        next.push(cell.iter().copied().filter(|&u| u != v).collect());
        next.extend_from_slice(&cells[target + 1..]);
        search(g, refine(g, next), best);
    }
}

fn are_twins(g: &SmallGraph, u: usize, v: usize) -> bool {
    let strip = !(1u32 << u | 1u32 << v);
    g.neighbors(u) & strip == g.neighbors(v) & strip
}

/// Splits cells by neighbor counts into other cells until the partition is equitable.
/// The first splitting pair in index order is always applied, so the result only
/// depends on the isomorphism class of (graph, ordered partition).
fn refine(g: &SmallGraph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    'outer: loop {
        let masks: Vec<u32> = cells
            .iter()
            .map(|c| c.iter().fold(0u32, |m, &v| m | 1 << v))
            .collect();
        for t in 0..cells.len() {
            if cells[t].len() < 2 {
                continue;
            }
            for &splitter in &masks {
                let count = |v: usize| (g.neighbors(v) & splitter).count_ones();
                let first = count(cells[t][0]);
                if cells[t].iter().all(|&v| count(v) == first) {
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> = cells[t].iter().map(|&v| (count(v), v)).collect();
                keyed.sort_unstable();
                let mut parts: Vec<Vec<usize>> = Vec::new();
                let mut last = None;
                for (k, v) in keyed {
                    if last != Some(k) {
                        parts.push(Vec::new());
                        last = Some(k);
                    }
                    parts.last_mut().unwrap().push(v);
                }
                cells.splice(t..=t, parts);
                continue 'outer;
            }
        }
        return cells;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{clebsch, cycle, petersen};
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        p
    }

    #[test]
    fn invariant_under_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for g in [cycle(5), petersen(), clebsch(), cycle(6)] {
            let (form, _) = canonical_form(&g);
            for _ in 0..100 {
                let h = g.relabel(&random_perm(g.n(), &mut rng));
                assert_eq!(canonical_form(&h).0, form);
            }
        }
    }

    #[test]
    fn permutation_maps_onto_form() {
        let g = SmallGraph::from_edges(6, &[(0, 3), (3, 5), (1, 2), (2, 4)]).unwrap();
        let (form, perm) = canonical_form(&g);
        assert_eq!(g.relabel(&perm), form);
    }

    #[test]
    fn distinguishes_non_isomorphic() {
        let p4 = SmallGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let star = SmallGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(!is_isomorphic(&p4, &star));
        assert!(is_isomorphic(&cycle(5), &cycle(5).relabel(&[2, 4, 1, 3, 0])));
    }

    #[test]
    fn empty_graph_is_cheap() {
        let g = SmallGraph::empty(32).unwrap();
        assert_eq!(canonical_form(&g).0, g);
    }

    #[test]
    fn rooted_partition_keeps_roots() {
        // path a-b-c rooted at an endpoint vs rooted at the middle
        let p3 = SmallGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let end = canonical_form_with_partition(&p3, &[vec![0], vec![1, 2]]);
        let mid = canonical_form_with_partition(&p3, &[vec![1], vec![0, 2]]);
        assert_ne!(end.0, mid.0);
        assert_eq!(end.1[0], 0);
        assert_eq!(mid.1[1], 0);
        let other_end = canonical_form_with_partition(&p3, &[vec![2], vec![0, 1]]);
        assert_eq!(end.0, other_end.0);
    }
}
