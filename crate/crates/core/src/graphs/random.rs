use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;

use super::graph::SmallGraph;

/// Visits all vertex pairs in a seeded random order and keeps each with probability
/// `edge_prob` unless it would close a triangle.
pub fn random_triangle_free(n: usize, edge_prob: f64, seed: u64) -> Result<SmallGraph> {
    let mut g = SmallGraph::empty(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    pairs.shuffle(&mut rng);
    for (u, v) in pairs {
        if rng.gen_bool(edge_prob.clamp(0.0, 1.0)) && g.neighbors(u) & g.neighbors(v) == 0 {
            g.add_edge(u, v);
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_and_triangle_free() {
        for seed in 0..50 {
            let g = random_triangle_free(14, 0.5, seed).unwrap();
            assert!(g.is_triangle_free());
            assert_eq!(g, random_triangle_free(14, 0.5, seed).unwrap());
        }
        assert_eq!(random_triangle_free(10, 0.0, 1).unwrap().edge_count(), 0);
        // with every pair offered the result is maximal triangle-free
        let g = random_triangle_free(12, 1.0, 4).unwrap();
        for u in 0..12 {
            for v in u + 1..12 {
                assert!(g.has_edge(u, v) || g.neighbors(u) & g.neighbors(v) != 0);
            }
        }
        assert!(random_triangle_free(33, 0.5, 0).is_err());
    }
}
