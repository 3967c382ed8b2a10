use serde::Serialize;

use crate::error::{Error, Result};

use super::graph::{Bipartition, SmallGraph};

/// Largest vertex count accepted by the exhaustive `D₂` search.
pub const MAX_D2_VERTICES: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct D2Solution {
    pub removed: usize,
    pub cut: Bipartition,
}

/// Edges with both endpoints on the same side: `e(A) + e(B)`.
pub fn removed_edges(g: &SmallGraph, cut: &Bipartition) -> usize {
    let a = cut.side & g.vertex_mask();
    let b = !cut.side & g.vertex_mask();
    g.edges_within(a) + g.edges_within(b)
}

/// Exact bipartization distance by walking all `2^(n-1)` bipartitions in Gray-code
/// order with the last vertex pinned to part B. Among optimal cuts the one whose
/// part-A bit mask is numerically smallest is returned.
pub fn d2_exact(g: &SmallGraph) -> Result<D2Solution> {
    let n = g.n();
    if n > MAX_D2_VERTICES {
        return Err(Error::Capacity(format!(
            "exact D2 supports at most {MAX_D2_VERTICES} vertices, got {n}"
        )));
    }
    let mut removed = g.edge_count() as i64;
    let mut best = (removed, 0u32);
    if n <= 1 {
        return Ok(D2Solution {
            removed: 0,
            cut: Bipartition::new(0),
        });
    }
    let all = g.vertex_mask();
    let mut side = 0u32;
    for step in 1u32..1 << (n - 1) {
        let v = step.trailing_zeros() as usize;
        let nbrs = g.neighbors(v);
        let in_a = (nbrs & side).count_ones() as i64;
        let in_b = (nbrs & !side & all).count_ones() as i64;
        if side >> v & 1 == 0 {
            removed += in_a - in_b;
        } else {
            removed += in_b - in_a;
        }
        side ^= 1 << v;
        if removed < best.0 || (removed == best.0 && side < best.1) {
            best = (removed, side);
        }
    }
    Ok(D2Solution {
        removed: best.0 as usize,
        cut: Bipartition::new(best.1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{blow_up, clebsch, cycle, BlowUpSpec, CLEBSCH_FIGURE_PART};
    use proptest::prelude::*;

    fn brute(g: &SmallGraph) -> usize {
        (0u32..1 << g.n())
            .map(|s| removed_edges(g, &Bipartition::new(s)))
            .min()
            .unwrap()
    }

    #[test]
    fn known_values() {
        assert_eq!(d2_exact(&cycle(5)).unwrap().removed, 1);
        assert_eq!(d2_exact(&cycle(6)).unwrap().removed, 0);
        assert_eq!(d2_exact(&clebsch()).unwrap().removed, 8);
        let c5x2 = blow_up(&BlowUpSpec::new(cycle(5), vec![2; 5])).unwrap();
        assert_eq!(d2_exact(&c5x2).unwrap().removed, 4);
    }

    #[test]
    fn figure_cut_and_trivial_cuts() {
        let g = clebsch();
        assert_eq!(removed_edges(&g, &Bipartition::from_part(&CLEBSCH_FIGURE_PART)), 8);
        assert_eq!(removed_edges(&g, &Bipartition::new(0)), 40);
        assert_eq!(removed_edges(&cycle(5), &Bipartition::from_part(&[0, 2])), 1);
    }

    #[test]
    fn witness_is_optimal_and_smallest() {
        let g = cycle(5);
        let sol = d2_exact(&g).unwrap();
        assert_eq!(removed_edges(&g, &sol.cut), 1);
        let smallest = (0u32..32)
            .find(|&s| removed_edges(&g, &Bipartition::new(s)) == 1)
            .unwrap();
        assert_eq!(sol.cut.side, smallest);
    }

    #[test]
    fn capacity() {
        let g = SmallGraph::empty(25).unwrap();
        assert!(matches!(d2_exact(&g), Err(Error::Capacity(_))));
        assert_eq!(d2_exact(&SmallGraph::empty(0).unwrap()).unwrap().removed, 0);
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = SmallGraph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut g = SmallGraph::empty(n).unwrap();
                let mut k = 0;
                for v in 1..n {
                    for u in 0..v {
                        if bits[k] {
                            g.add_edge(u, v);
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn matches_brute_force_and_bounds(g in arb_graph(9), side in any::<u32>()) {
            let sol = d2_exact(&g).unwrap();
            prop_assert_eq!(sol.removed, brute(&g));
            prop_assert_eq!(removed_edges(&g, &sol.cut), sol.removed);
            prop_assert!(sol.removed <= removed_edges(&g, &Bipartition::new(side)));
            prop_assert!(sol.removed <= g.edge_count() / 2);
        }

        #[test]
        fn isomorphism_invariant(g in arb_graph(9), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut perm: Vec<usize> = (0..g.n()).collect();
            perm.shuffle(&mut rng);
            prop_assert_eq!(d2_exact(&g).unwrap().removed, d2_exact(&g.relabel(&perm)).unwrap().removed);
        }
    }
}
