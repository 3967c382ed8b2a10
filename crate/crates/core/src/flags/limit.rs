use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graphs::{canonical_form, SmallGraph};
use crate::rational::{q, Q};

use super::certificate::Certificate;
use super::sdp::SdpProblem;

/// Distribution of the `n`-vertex induced subgraph of a large balanced blow-up of
/// `C5`, over the given graphs (in canonical form). Every sample lands in the list
/// because blow-ups of `C5` are triangle-free.
pub fn c5_limit_densities(graphs: &[SmallGraph]) -> Result<Vec<Q>> {
    let n = graphs.first().map_or(0, SmallGraph::n);
    if n > 8 {
        return Err(Error::Capacity(format!("5^{n} class assignments")));
    }
    let canon: Vec<SmallGraph> = graphs.iter().map(|g| canonical_form(g).0).collect();
    let mut hits = vec![0i64; graphs.len()];
    let total = 5i64.pow(n as u32);
    for code in 0..total {
        let class: Vec<i64> = (0..n).map(|i| code / 5i64.pow(i as u32) % 5).collect();
        let mut g = SmallGraph::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                if matches!((class[u] - class[v]).rem_euclid(5), 1 | 4) {
                    g.add_edge(u, v);
                }
            }
        }
        let c = canonical_form(&g).0;
        let f = canon
            .iter()
            .position(|h| *h == c)
            .ok_or_else(|| Error::Invariant("blow-up sample missing from constraint graphs".into()))?;
        hits[f] += 1;
    }
    Ok(hits.into_iter().map(|h| q(h, total)).collect())
}

/// The certified inequality averaged against the `C5` blow-up limit. Any multipliers
/// and PSD blocks give at least `2/25` here, so a certified `λ` is at least `1/25`.
pub fn c5_limit_value(p: &SdpProblem, c: &Certificate) -> Result<Q> {
    let density = c5_limit_densities(&p.constraint_graphs)?;
    let blocks: Vec<Vec<Vec<Q>>> = c.blocks.iter().map(|b| b.0.clone()).collect();
    Ok(density
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_zero())
        .fold(Q::zero(), |acc, (f, d)| acc + d * p.row_value(f, &c.mu, &blocks)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::{edge_cut, enumerate_family, single_vertex_cut, uniform_random_cut, CutFamilySpec};
    use crate::flags::{assemble_sdp, rooted_types, Block};
    use crate::graphs::enumerate_triangle_free;
    use crate::rational::{half, qi};
    use num_traits::One;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn distribution() {
        let graphs = enumerate_triangle_free(3).unwrap();
        let d = c5_limit_densities(&graphs).unwrap();
        assert!(d.iter().sum::<Q>().is_one());
        // edge density 2/5 in the limit
        let edges: Q = graphs.iter().zip(&d).map(|(g, x)| x * qi(g.edge_count() as i64)).sum();
        assert_eq!(edges / qi(3), q(2, 5));
        let two = enumerate_triangle_free(2).unwrap();
        assert_eq!(c5_limit_densities(&two).unwrap().iter().filter(|x| **x == q(2, 5)).count(), 1);
    }

    #[test]
    fn canonical_cuts_meet_the_floor() {
        // single-vertex cut: two non-neighbors lie in adjacent classes with probability 2/25·...
        let p = assemble_sdp(5, &[single_vertex_cut(), edge_cut(), uniform_random_cut()], &[]).unwrap();
        let unit = |c: usize| Certificate {
            lambda: Q::zero(),
            mu: (0..3).map(|i| if i == c { qi(1) } else { qi(0) }).collect(),
            blocks: vec![],
        };
        assert_eq!(c5_limit_value(&p, &unit(0)).unwrap(), q(2, 25));
        assert_eq!(c5_limit_value(&p, &unit(2)).unwrap(), q(1, 5));
        assert!(c5_limit_value(&p, &unit(1)).unwrap() >= q(2, 25));
    }

    #[test]
    fn any_psd_combination_stays_above_the_floor() {
        let mut cuts = enumerate_family(&CutFamilySpec::any_root(0, 1, vec![qi(0), half(), qi(1)])).unwrap();
        cuts.push(edge_cut());
        let v = SmallGraph::empty(1).unwrap();
        let basis = rooted_types(&v, 2, true).unwrap();
        let p = assemble_sdp(4, &cuts, &[basis]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let raw: Vec<i64> = (0..cuts.len()).map(|_| rng.gen_range(0..5)).collect();
            let total: i64 = raw.iter().sum::<i64>().max(1);
            let mu: Vec<Q> = raw.iter().map(|&x| q(x, total)).collect();
            let (a, b) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
            // rank one block [a b]^T [a b]
            let block = Block(vec![vec![qi(a * a), qi(a * b)], vec![qi(a * b), qi(b * b)]]);
            let c = Certificate { lambda: Q::zero(), mu, blocks: vec![block] };
            if raw.iter().all(|&x| x == 0) {
                continue;
            }
            assert!(c5_limit_value(&p, &c).unwrap() >= q(2, 25));
        }
    }
}
