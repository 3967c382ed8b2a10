//! Drawing concrete bipartitions from a rooted cut.

use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graphs::{iter_bits, Bipartition, SmallGraph};
use crate::rational::{to_f64, Q};

use super::descriptor::RootedCutDescriptor;
use super::expectation::vertex_probabilities;

/// Draws every vertex independently with its declared probability. Vertices are
/// visited in index order from a ChaCha8 stream seeded with `seed`.
pub fn sample_cut(
    host: &SmallGraph,
    d: &RootedCutDescriptor,
    phi: &[usize],
    seed: u64,
) -> Result<Bipartition> {
    let probs = vertex_probabilities(host, d, phi)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut side = 0u32;
    for (v, p) in probs.iter().enumerate() {
        if draw(&mut rng, p) {
            side |= 1 << v;
        }
    }
    Ok(Bipartition::new(side))
}

fn draw(rng: &mut ChaCha8Rng, p: &Q) -> bool {
    if p.is_zero() {
        return false;
    }
    if p.is_one() {
        return true;
    }
    match (p.numer().to_u64(), p.denom().to_u64()) {
        (Some(num), Some(den)) => rng.gen_range(0..den) < num,
        _ => rng.gen::<f64>() < to_f64(p),
    }
}

/// Method of conditional expectations: vertices are fixed in index order, each to
/// the side that does not raise the conditional expectation (ties go to A).
/// Vertices whose probability is already 0 or 1 keep it.
pub fn derandomize(host: &SmallGraph, d: &RootedCutDescriptor, phi: &[usize]) -> Result<Bipartition> {
    let mut probs = vertex_probabilities(host, d, phi)?;
    for v in 0..host.n() {
        if probs[v].is_zero() || probs[v].is_one() {
            continue;
        }
        // same_side(1, x) = x and same_side(0, x) = 1 - x
        let (mut to_a, mut to_b) = (Q::zero(), Q::zero());
        for u in iter_bits(host.neighbors(v)) {
            to_a += &probs[u];
            to_b += Q::one() - &probs[u];
        }
        probs[v] = if to_a <= to_b { Q::one() } else { Q::zero() };
    }
    let side = probs
        .iter()
        .enumerate()
        .filter(|(_, p)| p.is_one())
        .fold(0u32, |m, (v, _)| m | 1 << v);
    Ok(Bipartition::new(side))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::{
        edge_cut, expected_removed, induced_embeddings, single_vertex_cut, ClebschPreset,
    };
    use crate::graphs::{clebsch, cycle, d2_exact, enumerate_triangle_free, removed_edges};
    use crate::rational::qi;

    #[test]
    fn deterministic_descriptor_ignores_seed() {
        let g = clebsch();
        let d = ClebschPreset::ZeroTwoFive.descriptor();
        let phi = &induced_embeddings(&g, d.root())[0];
        let first = sample_cut(&g, &d, phi, 1).unwrap();
        for seed in 2..20 {
            assert_eq!(sample_cut(&g, &d, phi, seed).unwrap(), first);
        }
        assert_eq!(derandomize(&g, &d, phi).unwrap(), first);
    }

    #[test]
    fn same_seed_same_cut() {
        let g = clebsch();
        let d = edge_cut();
        let a = sample_cut(&g, &d, &[0, 1], 99).unwrap();
        let b = sample_cut(&g, &d, &[0, 1], 99).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn monte_carlo_mean_matches_expectation() {
        let g = clebsch();
        let d = edge_cut();
        let phi = [0, 1];
        let exact = to_f64(&expected_removed(&g, &d, &phi).unwrap());
        let samples = 100_000u64;
        let (mut sum, mut sum_sq) = (0.0f64, 0.0f64);
        for seed in 0..samples {
            let r = removed_edges(&g, &sample_cut(&g, &d, &phi, seed).unwrap()) as f64;
            sum += r;
            sum_sq += r * r;
        }
        let mean = sum / samples as f64;
        let var = sum_sq / samples as f64 - mean * mean;
        let stderr = (var / samples as f64).sqrt();
        assert!((mean - exact).abs() <= 3.0 * stderr, "mean {mean} exact {exact} se {stderr}");
    }

    #[test]
    fn edge_cut_on_c5_derandomizes_to_one() {
        let c5 = cycle(5);
        let cut = derandomize(&c5, &edge_cut(), &[0, 1]).unwrap();
        assert_eq!(removed_edges(&c5, &cut), 1);
    }

    #[test]
    fn derandomized_cut_sits_between_d2_and_expectation() {
        for n in 1..=7 {
            for g in enumerate_triangle_free(n).unwrap() {
                let d2 = d2_exact(&g).unwrap().removed as i64;
                for d in [single_vertex_cut(), edge_cut()] {
                    for phi in induced_embeddings(&g, d.root()) {
                        let cut = derandomize(&g, &d, &phi).unwrap();
                        let removed = qi(removed_edges(&g, &cut) as i64);
                        assert!(removed >= qi(d2));
                        assert!(removed <= expected_removed(&g, &d, &phi).unwrap());
                    }
                }
            }
        }
    }
}
