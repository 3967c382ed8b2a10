use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};

use super::canon::canonical_form;
use super::graph::SmallGraph;

pub const MAX_ENUMERATION_ORDER: usize = 8;
const MAX_FILTER_ORDER: usize = 6;

/// One canonical representative per isomorphism class of triangle-free graphs on
/// `n` vertices, ordered by edge count and then by canonical adjacency.
///
/// Built by vertex extension: every triangle-free graph on `n` vertices is a
/// triangle-free graph on `n-1` vertices plus a vertex joined to an independent set.
pub fn enumerate_triangle_free(n: usize) -> Result<Vec<SmallGraph>> {
    if !(1..=MAX_ENUMERATION_ORDER).contains(&n) {
        return Err(Error::Capacity(format!(
            "enumeration supports 1..={MAX_ENUMERATION_ORDER} vertices, got {n}"
        )));
    }
    let mut level = vec![SmallGraph::empty(1)?];
    for _ in 1..n {
        let next: BTreeSet<SmallGraph> = level
            .par_iter()
            .flat_map_iter(|g| {
                let base = g.with_vertex().expect("order bounded above");
                let new = g.n();
                (0u32..1 << g.n())
                    .filter(move |&s| g.is_independent(s))
                    .map(move |s| {
                        let mut h = base;
                        for v in super::graph::iter_bits(s) {
                            h.add_edge(v, new);
                        }
                        canonical_form(&h).0
                    })
            })
            .collect();
        level = next.into_iter().collect();
    }
    sort_canonical(&mut level);
    Ok(level)
}

/// Independent strategy: canonicalize every labeled triangle-free graph on `n <= 6`
/// vertices and deduplicate.
pub fn enumerate_triangle_free_by_filter(n: usize) -> Result<Vec<SmallGraph>> {
    if !(1..=MAX_FILTER_ORDER).contains(&n) {
        return Err(Error::Capacity(format!(
            "filter enumeration supports 1..={MAX_FILTER_ORDER} vertices, got {n}"
        )));
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let classes: BTreeSet<SmallGraph> = (0u64..1 << pairs.len())
        .into_par_iter()
        .filter_map(|mask| {
            let mut g = SmallGraph::empty(n).ok()?;
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
            g.is_triangle_free().then(|| canonical_form(&g).0)
        })
        .collect();
    let mut out: Vec<SmallGraph> = classes.into_iter().collect();
    sort_canonical(&mut out);
    Ok(out)
}

fn sort_canonical(graphs: &mut [SmallGraph]) {
    graphs.sort_by_key(|g| (g.edge_count(), *g));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::is_isomorphic;

    #[test]
    fn small_counts() {
        // OEIS A006785
        let counts: Vec<usize> = (1..=8)
            .map(|n| enumerate_triangle_free(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 2, 3, 7, 14, 38, 107, 410]);
    }

    #[test]
    fn n3_contents() {
        let gs = enumerate_triangle_free(3).unwrap();
        let edges: Vec<usize> = gs.iter().map(|g| g.edge_count()).collect();
        assert_eq!(edges, vec![0, 1, 2]);
    }

    #[test]
    fn strategies_agree() {
        for n in 1..=6 {
            assert_eq!(
                enumerate_triangle_free(n).unwrap(),
                enumerate_triangle_free_by_filter(n).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn all_triangle_free_and_pairwise_distinct() {
        let gs = enumerate_triangle_free(5).unwrap();
        for (i, a) in gs.iter().enumerate() {
            assert!(a.is_triangle_free());
            for b in &gs[i + 1..] {
                assert!(!is_isomorphic(a, b));
            }
        }
    }

    #[test]
    fn range_checked() {
        assert!(matches!(enumerate_triangle_free(0), Err(Error::Capacity(_))));
        assert!(matches!(enumerate_triangle_free(9), Err(Error::Capacity(_))));
        assert!(enumerate_triangle_free_by_filter(7).is_err());
    }

    #[test]
    fn four_vertex_forms_distinct() {
        let gs = enumerate_triangle_free(4).unwrap();
        let forms: BTreeSet<_> = gs.iter().map(|g| canonical_form(g).0).collect();
        assert_eq!(forms.len(), 7);
    }
}
