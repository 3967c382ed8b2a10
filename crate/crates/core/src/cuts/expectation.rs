//! Exact expected number of removed edges for a rooted cut at a fixed embedding.

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graphs::SmallGraph;
use crate::rational::{same_side, Q};

use super::descriptor::RootedCutDescriptor;

/// All injective maps `phi` (root vertex `a` to host vertex `phi[a]`) whose image
/// induces a labeled copy of `root`, in lexicographic order.
pub fn induced_embeddings(host: &SmallGraph, root: &SmallGraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut phi = Vec::with_capacity(root.n());
    extend(host, root, &mut phi, 0, &mut out);
    out
}

fn extend(host: &SmallGraph, root: &SmallGraph, phi: &mut Vec<usize>, used: u32, out: &mut Vec<Vec<usize>>) {
    let a = phi.len();
    if a == root.n() {
        out.push(phi.clone());
        return;
    }
    for v in 0..host.n() {
        if used >> v & 1 == 1 {
            continue;
        }
        if phi
            .iter()
            .enumerate()
            .all(|(b, &w)| root.has_edge(a, b) == host.has_edge(v, w))
        {
            phi.push(v);
            extend(host, root, phi, used | 1 << v, out);
            phi.pop();
        }
    }
}

pub fn check_embedding(host: &SmallGraph, root: &SmallGraph, phi: &[usize]) -> Result<()> {
    if phi.len() != root.n() {
        return Err(Error::InvalidEmbedding(format!(
            "{} images for a {}-vertex root",
            phi.len(),
            root.n()
        )));
    }
    let mut used = 0u32;
    for (a, &v) in phi.iter().enumerate() {
        if v >= host.n() {
            return Err(Error::InvalidEmbedding(format!("vertex {v} not in host")));
        }
        if used >> v & 1 == 1 {
            return Err(Error::InvalidEmbedding(format!("vertex {v} used twice")));
        }
        used |= 1 << v;
        for (b, &w) in phi[..a].iter().enumerate() {
            if root.has_edge(a, b) != host.has_edge(v, w) {
                return Err(Error::InvalidEmbedding(format!(
                    "root pair ({b},{a}) maps to ({w},{v}) with different adjacency"
                )));
            }
        }
    }
    Ok(())
}

/// Adjacency pattern of host vertex `v` relative to the embedded root.
pub fn pattern_of(host: &SmallGraph, phi: &[usize], v: usize) -> u32 {
    phi.iter()
        .enumerate()
        .filter(|&(_, &r)| host.has_edge(v, r))
        .fold(0, |acc, (a, _)| acc | 1 << a)
}

/// Probability that each host vertex is placed in part A.
pub fn vertex_probabilities(
    host: &SmallGraph,
    d: &RootedCutDescriptor,
    phi: &[usize],
) -> Result<Vec<Q>> {
    check_embedding(host, d.root(), phi)?;
    let mut probs = vec![Q::zero(); host.n()];
    let root_mask = phi.iter().fold(0u32, |m, &v| m | 1 << v);
    let triangle_free = host.is_triangle_free();
    for v in 0..host.n() {
        if root_mask >> v & 1 == 1 {
            continue;
        }
        let pattern = pattern_of(host, phi, v);
        // a vertex adjacent to two adjacent roots would close a triangle
        debug_assert!(!triangle_free || d.is_realizable(pattern));
        probs[v] = d.prob(pattern).clone();
    }
    for (a, &v) in phi.iter().enumerate() {
        probs[v] = d.root_side()[a].clone();
    }
    Ok(probs)
}

/// Expected `e(A) + e(B)` when every vertex is sided independently: root-root,
/// root-nonroot and nonroot-nonroot edges each contribute the probability that
/// their endpoints land together.
pub fn expected_removed(host: &SmallGraph, d: &RootedCutDescriptor, phi: &[usize]) -> Result<Q> {
    let probs = vertex_probabilities(host, d, phi)?;
    Ok(expected_removed_with(host, &probs))
}

pub(crate) fn expected_removed_with(host: &SmallGraph, probs: &[Q]) -> Q {
    host.edges()
        .map(|(u, v)| same_side(&probs[u], &probs[v]))
        .fold(Q::zero(), |acc, x| acc + x)
}

/// Mean of [`expected_removed`] over every induced embedding of the root.
pub fn average_expected_removed(host: &SmallGraph, d: &RootedCutDescriptor) -> Result<Q> {
    let embeddings = induced_embeddings(host, d.root());
    if embeddings.is_empty() {
        return Err(Error::NoEmbedding);
    }
    let total = embeddings
        .par_iter()
        .map(|phi| expected_removed(host, d, phi))
        .try_reduce(Q::zero, |a, b| Ok(a + b))?;
    Ok(total / Q::from_integer((embeddings.len() as i64).into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::{edge_cut, single_vertex_cut, triple_edge_cut, uniform_random_cut};
    use crate::graphs::{clebsch, cycle, d2_exact, star};
    use crate::rational::{q, qi};

    #[test]
    fn single_vertex_examples() {
        let d = single_vertex_cut();
        for v in 0..5 {
            assert_eq!(expected_removed(&cycle(5), &d, &[v]).unwrap(), qi(1));
        }
        assert_eq!(expected_removed(&star(4), &d, &[0]).unwrap(), qi(0));
        let g = clebsch();
        for v in 0..16 {
            let non_nbrs = g.vertex_mask() & !g.neighbors(v) & !(1 << v);
            let inside = g.edges_within(non_nbrs) as i64;
            assert_eq!(expected_removed(&g, &d, &[v]).unwrap(), qi(inside));
        }
    }

    #[test]
    fn edge_cut_examples() {
        let d = edge_cut();
        let c5 = cycle(5);
        for phi in induced_embeddings(&c5, d.root()) {
            assert_eq!(expected_removed(&c5, &d, &phi).unwrap(), qi(1));
        }
        assert_eq!(average_expected_removed(&cycle(4), &d).unwrap(), qi(0));
    }

    #[test]
    fn uniform_cut_is_half_the_edges() {
        let d = uniform_random_cut();
        let g = clebsch();
        assert_eq!(expected_removed(&g, &d, &[]).unwrap(), qi(20));
        assert_eq!(expected_removed(&cycle(5), &d, &[]).unwrap(), q(5, 2));
    }

    #[test]
    fn embeddings_are_induced() {
        let c5 = cycle(5);
        // edge root: 5 edges, two orientations each
        assert_eq!(induced_embeddings(&c5, edge_cut().root()).len(), 10);
        assert!(induced_embeddings(&c5, triple_edge_cut().root()).is_empty());
        assert!(matches!(
            average_expected_removed(&c5, &triple_edge_cut()),
            Err(Error::NoEmbedding)
        ));
        // non-adjacent pair is not an induced edge
        assert!(matches!(
            expected_removed(&c5, &edge_cut(), &[0, 2]),
            Err(Error::InvalidEmbedding(_))
        ));
        assert!(expected_removed(&c5, &edge_cut(), &[0, 0]).is_err());
        assert!(expected_removed(&c5, &edge_cut(), &[0]).is_err());
    }

    #[test]
    fn triple_edge_on_clebsch_is_at_least_d2() {
        let g = clebsch();
        let avg = average_expected_removed(&g, &triple_edge_cut()).unwrap();
        let d2 = d2_exact(&g).unwrap().removed as i64;
        assert!(avg >= qi(d2));
    }

    #[test]
    fn part_swap_invariance() {
        let g = clebsch();
        for d in [single_vertex_cut(), edge_cut(), triple_edge_cut()] {
            let s = d.swapped();
            for phi in induced_embeddings(&g, d.root()).iter().take(50) {
                assert_eq!(
                    expected_removed(&g, &d, phi).unwrap(),
                    expected_removed(&g, &s, phi).unwrap()
                );
            }
        }
    }

    #[test]
    fn root_automorphism_invariance() {
        // symmetric under exchanging the two root endpoints
        let d = RootedCutDescriptor::new(
            SmallGraph::from_edges(2, &[(0, 1)]).unwrap(),
            vec![q(1, 2), q(1, 2)],
            vec![q(1, 3), qi(0), qi(0), q(1, 2)],
        )
        .unwrap();
        assert_eq!(d.permuted(&[1, 0]), d);
        let g = clebsch();
        for phi in induced_embeddings(&g, d.root()) {
            let flipped = vec![phi[1], phi[0]];
            assert_eq!(
                expected_removed(&g, &d, &phi).unwrap(),
                expected_removed(&g, &d, &flipped).unwrap()
            );
        }
    }

    #[test]
    fn clebsch_presets_on_clebsch() {
        use crate::cuts::ClebschPreset;
        let g = clebsch();
        for (preset, value) in [(ClebschPreset::ZeroTwoFive, 14), (ClebschPreset::OneTwoFive, 19)] {
            let d = preset.descriptor();
            let embeddings = induced_embeddings(&g, d.root());
            assert_eq!(embeddings.len(), 1920);
            let min = embeddings
                .iter()
                .map(|phi| expected_removed(&g, &d, phi).unwrap())
                .min()
                .unwrap();
            assert_eq!(min, qi(value));
            assert!(min >= qi(8));
        }
    }
}
