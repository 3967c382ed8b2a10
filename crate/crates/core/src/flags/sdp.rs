use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cuts::RootedCutDescriptor;
use crate::error::{Error, Result};
use crate::graphs::{enumerate_triangle_free, from_graph6, to_graph6, SmallGraph};
use crate::rational::{binomial, Q};

use super::blocks::{blocks_for, falling_factorial, for_each_injection, frobenius};
use super::expression::{cut_to_flag_expression, FlagExpression};
use super::types::RootedType;

/// The certificate search for constraint graphs of size `n`: find `mu` in the simplex
/// over `cuts` and PSD matrices `Q_j` minimizing `λ` subject to
/// `Σ_c mu_c·cut_rows[c][F] + Σ_j <Q_j, product_blocks[j][F]> <= 2λ` for every `F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "SdpRepr", try_from = "SdpRepr")]
pub struct SdpProblem {
    pub n: usize,
    pub constraint_graphs: Vec<SmallGraph>,
    pub cuts: Vec<RootedCutDescriptor>,
    pub cut_rows: Vec<Vec<Q>>,
    pub bases: Vec<Vec<RootedType>>,
    pub product_blocks: Vec<Vec<Vec<Vec<Q>>>>,
}

impl SdpProblem {
    /// Left-hand side of the row of constraint graph `f`.
    pub fn row_value(&self, f: usize, mu: &[Q], blocks: &[Vec<Vec<Q>>]) -> Q {
        let mut sum = Q::zero();
        for (m, row) in mu.iter().zip(&self.cut_rows) {
            if !m.is_zero() {
                sum += m * &row[f];
            }
        }
        for (q, per_graph) in blocks.iter().zip(&self.product_blocks) {
            sum += frobenius(q, &per_graph[f]);
        }
        sum
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }
}

/// Asymptotic contribution of one cut to constraint graph `f`: the quadratic terms
/// in density form, averaged over all injective root maps. Maps that do not induce
/// the root fall back to the uniform random cut, which removes half the edges.
pub(crate) fn cut_row_entry(e: &FlagExpression, f: &SmallGraph) -> Q {
    let n = f.n();
    let k = e.root.n();
    let pairs = binomial(n - k, 2);
    let fallback = Q::new(f.edge_count().into(), (2 * binomial(n, 2)).into());
    let mut sum = Q::zero();
    let mut maps = 0u64;
    for_each_injection(n, k, &mut |theta| {
        maps += 1;
        if f.induced(theta) != e.root {
            sum += &fallback;
            return;
        }
        let rest: Vec<usize> = (0..n).filter(|v| !theta.contains(v)).collect();
        let mut hits = Q::zero();
        for (i, &x) in rest.iter().enumerate() {
            for &y in &rest[i + 1..] {
                if f.has_edge(x, y) {
                    if let Some(c) = e.quadratic.get(&RootedType::induced(f, theta, &[x, y])) {
                        hits += c;
                    }
                }
            }
        }
        sum += hits / Q::from_integer(pairs.into());
    });
    debug_assert_eq!(maps, falling_factorial(n, k));
    sum / Q::from_integer(maps.into())
}

pub fn assemble_sdp(n: usize, cuts: &[RootedCutDescriptor], bases: &[Vec<RootedType>]) -> Result<SdpProblem> {
    if cuts.is_empty() {
        return Err(Error::InvalidArgument("no cut inequalities".into()));
    }
    if let Some(c) = cuts.iter().find(|c| c.k() + 2 > n) {
        return Err(Error::DimensionMismatch(format!(
            "a {}-vertex root needs constraint graphs of size {}, got {n}",
            c.k(),
            c.k() + 2
        )));
    }
    let graphs = enumerate_triangle_free(n)?;
    let cut_rows = cuts
        .par_iter()
        .map(|c| {
            let e = cut_to_flag_expression(c);
            graphs.iter().map(|f| cut_row_entry(&e, f)).collect()
        })
        .collect();
    let product_blocks = bases
        .iter()
        .map(|b| blocks_for(b, &graphs))
        .collect::<Result<_>>()?;
    Ok(SdpProblem {
        n,
        constraint_graphs: graphs,
        cuts: cuts.to_vec(),
        cut_rows,
        bases: bases.to_vec(),
        product_blocks,
    })
}

#[derive(Serialize, Deserialize)]
struct SdpRepr {
    n: usize,
    constraint_graphs: Vec<String>,
    cuts: Vec<RootedCutDescriptor>,
    #[serde(with = "crate::rational::serde_q::matrix")]
    cut_rows: Vec<Vec<Q>>,
    bases: Vec<Vec<RootedType>>,
    product_blocks: Vec<Vec<Matrix>>,
}

#[derive(Serialize, Deserialize)]
struct Matrix(#[serde(with = "crate::rational::serde_q::matrix")] Vec<Vec<Q>>);

impl From<SdpProblem> for SdpRepr {
    fn from(p: SdpProblem) -> Self {
        SdpRepr {
            n: p.n,
            constraint_graphs: p.constraint_graphs.iter().map(to_graph6).collect(),
            cuts: p.cuts,
            cut_rows: p.cut_rows,
            bases: p.bases,
            product_blocks: p
                .product_blocks
                .into_iter()
                .map(|per| per.into_iter().map(Matrix).collect())
                .collect(),
        }
    }
}

impl TryFrom<SdpRepr> for SdpProblem {
    type Error = Error;

    fn try_from(r: SdpRepr) -> Result<Self> {
        let constraint_graphs = r
            .constraint_graphs
            .iter()
            .map(|s| from_graph6(s))
            .collect::<Result<Vec<_>>>()?;
        let graphs = constraint_graphs.len();
        if r.cut_rows.len() != r.cuts.len() || r.cut_rows.iter().any(|row| row.len() != graphs) {
            return Err(Error::DimensionMismatch("cut rows do not match cuts x graphs".into()));
        }
        if r.product_blocks.len() != r.bases.len() {
            return Err(Error::DimensionMismatch("one block family per basis expected".into()));
        }
        for (basis, per) in r.bases.iter().zip(&r.product_blocks) {
            let d = basis.len();
            if per.len() != graphs || per.iter().any(|m| m.0.len() != d || m.0.iter().any(|row| row.len() != d)) {
                return Err(Error::DimensionMismatch("product block shape".into()));
            }
        }
        Ok(SdpProblem {
            n: r.n,
            constraint_graphs,
            cuts: r.cuts,
            cut_rows: r.cut_rows,
            bases: r.bases,
            product_blocks: r
                .product_blocks
                .into_iter()
                .map(|per| per.into_iter().map(|m| m.0).collect())
                .collect(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::{edge_cut, single_vertex_cut, uniform_random_cut};
    use crate::flags::rooted_types;
    use crate::graphs::canonical_form;
    use crate::rational::q;

    fn small4() -> [(SmallGraph, Q, Q); 7] {
        let g = |edges: &[(usize, usize)]| SmallGraph::from_edges(4, edges).unwrap();
        // (graph, single-vertex row by hand, uniform row = edge density / 2)
        [
            (g(&[]), q(0, 1), q(0, 1)),
            (g(&[(0, 1)]), q(1, 6), q(1, 12)),
            (g(&[(0, 1), (2, 3)]), q(1, 3), q(1, 6)),
            (g(&[(0, 1), (1, 2)]), q(1, 6), q(1, 6)),
            (g(&[(0, 1), (1, 2), (2, 3)]), q(1, 6), q(1, 4)),
            (g(&[(0, 1), (0, 2), (0, 3)]), q(0, 1), q(1, 4)),
            (g(&[(0, 1), (1, 2), (2, 3), (3, 0)]), q(0, 1), q(1, 3)),
        ]
    }

    #[test]
    fn hand_expanded_rows() {
        let p = assemble_sdp(4, &[single_vertex_cut(), uniform_random_cut()], &[]).unwrap();
        assert_eq!(p.constraint_graphs.len(), 7);
        for (g, single, uniform) in small4() {
            let f = p
                .constraint_graphs
                .iter()
                .position(|h| canonical_form(h).0 == canonical_form(&g).0)
                .unwrap();
            assert_eq!(p.cut_rows[0][f], single);
            assert_eq!(p.cut_rows[1][f], uniform);
        }
    }

    #[test]
    fn rows_are_isomorphism_invariant() {
        let cuts = [single_vertex_cut(), edge_cut()];
        let v = SmallGraph::empty(1).unwrap();
        let basis = rooted_types(&v, 2, true).unwrap();
        let p = assemble_sdp(5, &cuts, &[basis.clone()]).unwrap();
        for (f, g) in p.constraint_graphs.iter().enumerate() {
            let h = g.relabel(&[3, 0, 4, 2, 1]);
            for (c, cut) in cuts.iter().enumerate() {
                assert_eq!(cut_row_entry(&cut_to_flag_expression(cut), &h), p.cut_rows[c][f]);
            }
            assert_eq!(super::super::blocks::product_block(&basis, &h).unwrap(), p.product_blocks[0][f]);
        }
    }

    #[test]
    fn edge_root_falls_back_off_root() {
        // the empty graph has no edge to root at, so every map takes the uniform cut
        let p = assemble_sdp(4, &[edge_cut()], &[]).unwrap();
        assert!(p.cut_rows[0].iter().all(|x| *x >= Q::zero()));
        let empty = p.constraint_graphs.iter().position(|g| g.edge_count() == 0).unwrap();
        assert!(p.cut_rows[0][empty].is_zero());
        // C4: every map onto an edge removes nothing, the rest remove half of 4 edges of 6 pairs
        let c4 = p.constraint_graphs.iter().position(|g| g.edge_count() == 4).unwrap();
        assert_eq!(p.cut_rows[0][c4], q(4, 12) * q(1, 3));
    }

    #[test]
    fn errors() {
        assert!(assemble_sdp(4, &[], &[]).is_err());
        assert!(matches!(
            assemble_sdp(3, &[edge_cut()], &[]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let v = SmallGraph::empty(1).unwrap();
        let p = assemble_sdp(4, &[single_vertex_cut(), edge_cut()], &[rooted_types(&v, 2, true).unwrap()]).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        let back: SdpProblem = serde_json::from_str(&text).unwrap();
        assert_eq!(back, p);
        let broken = text.replacen("\"cut_rows\":[[", "\"cut_rows\":[[\"1/2\",", 1);
        assert!(serde_json::from_str::<SdpProblem>(&broken).is_err());
    }
}
