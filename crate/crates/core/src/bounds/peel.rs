use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{iter_bits, Bipartition, SmallGraph};
use crate::rational::{q, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelConfig {
    /// Stop once the `i`-vertex graph has minimum degree above `slope · i`.
    pub slope: Q,
    /// Stop after `⌊round_cap_coeff · n⌋` rounds.
    pub round_cap_coeff: Q,
    /// Replaces the round cap; `usize::MAX` disables it.
    pub round_cap_override: Option<usize>,
}

impl Default for PeelConfig {
    fn default() -> Self {
        PeelConfig {
            slope: q(3, 8),
            round_cap_coeff: q(1, 2_000_000),
            round_cap_override: None,
        }
    }
}

impl PeelConfig {
    pub fn uncapped(slope: Q) -> Self {
        PeelConfig {
            slope,
            round_cap_override: Some(usize::MAX),
            ..PeelConfig::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let zero = Q::from_integer(0.into());
        if self.slope <= zero || self.slope >= Q::from_integer(1.into()) {
            return Err(Error::InvalidArgument("slope must lie in (0, 1)".into()));
        }
        if self.round_cap_coeff < zero {
            return Err(Error::InvalidArgument("round cap coefficient must be nonnegative".into()));
        }
        Ok(())
    }

    pub fn round_cap(&self, n: usize) -> usize {
        self.round_cap_override.unwrap_or_else(|| {
            (&self.round_cap_coeff * Q::from_integer((n as i64).into()))
                .floor()
                .to_usize()
                .unwrap_or(usize::MAX)
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StopReason {
    DegreeThreshold,
    RoundCap,
    /// Every vertex was removed.
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeelStage {
    /// Surviving original vertices before this round, ascending.
    pub vertices: Vec<usize>,
    /// The graph they induce, relabeled `0..vertices.len()`.
    pub graph: SmallGraph,
    pub removed: usize,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeelTrace {
    pub stages: Vec<PeelStage>,
    pub final_vertices: Vec<usize>,
    pub final_graph: SmallGraph,
    pub stop_reason: StopReason,
}

impl PeelTrace {
    /// `(vertices, graph)` of `G_n, G_(n-1), ..., G_m`.
    pub fn subgraphs(&self) -> impl Iterator<Item = (&[usize], &SmallGraph)> {
        self.stages
            .iter()
            .map(|s| (s.vertices.as_slice(), &s.graph))
            .chain(std::iter::once((self.final_vertices.as_slice(), &self.final_graph)))
    }
}

/// Repeatedly deletes a minimum-degree vertex (lowest index on ties). The round cap
/// is checked first, then the degree threshold.
pub fn peel(g: &SmallGraph, cfg: &PeelConfig) -> Result<PeelTrace> {
    cfg.validate()?;
    let cap = cfg.round_cap(g.n());
    let mut alive = g.vertex_mask();
    let mut stages = Vec::new();
    let stop_reason = loop {
        let i = alive.count_ones() as usize;
        if stages.len() >= cap {
            break StopReason::RoundCap;
        }
        let Some((v, degree)) = iter_bits(alive)
            .map(|v| (v, (g.neighbors(v) & alive).count_ones() as usize))
            .min_by_key(|&(v, d)| (d, v))
        else {
            break StopReason::Exhausted;
        };
        if Q::from_integer((degree as i64).into()) > &cfg.slope * Q::from_integer((i as i64).into()) {
            break StopReason::DegreeThreshold;
        }
        let (graph, vertices) = g.induced_mask(alive);
        stages.push(PeelStage {
            vertices,
            graph,
            removed: v,
            degree,
        });
        alive &= !(1 << v);
    };
    let (final_graph, final_vertices) = g.induced_mask(alive);
    Ok(PeelTrace {
        stages,
        final_vertices,
        final_graph,
        stop_reason,
    })
}

/// `(3/32)(n² - m² + n - m) + d2_tail`.
pub fn lemma1_bound(n: u64, m_stage: u64, d2_tail: &Q) -> Result<Q> {
    if m_stage > n {
        return Err(Error::Domain(format!("stage {m_stage} exceeds n = {n}")));
    }
    let (n, m) = (n as i128, m_stage as i128);
    Ok(Q::new((3 * (n * n - m * m + n - m)).into(), 32.into()) + d2_tail)
}

/// Extends a cut of the subgraph induced by `sub_vertices` (indexed by position) to
/// all of `g`: the other vertices are placed in ascending order, each on the side
/// holding fewer of its already-placed neighbors, ties to part A.
pub fn extend_bipartition(g: &SmallGraph, sub_vertices: &[usize], sub_cut: &Bipartition) -> Result<Bipartition> {
    let mut placed = 0u32;
    let mut side = 0u32;
    for (pos, &v) in sub_vertices.iter().enumerate() {
        if v >= g.n() || placed >> v & 1 == 1 {
            return Err(Error::InvalidArgument(format!(
                "sub-vertex {v} is out of range or repeated"
            )));
        }
        placed |= 1 << v;
        if sub_cut.in_a(pos) {
            side |= 1 << v;
        }
    }
    for v in 0..g.n() {
        if placed >> v & 1 == 1 {
            continue;
        }
        let nbrs = g.neighbors(v) & placed;
        let in_a = (nbrs & side).count_ones();
        let in_b = (nbrs & !side).count_ones();
        if in_a <= in_b {
            side |= 1 << v;
        }
        placed |= 1 << v;
    }
    Ok(Bipartition::new(side))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{cycle, d2_exact, path, random_triangle_free, removed_edges};
    use crate::rational::qi;

    #[test]
    fn paper_cap_is_zero_at_desk_scale() {
        let cfg = PeelConfig::default();
        assert_eq!(cfg.round_cap(1_000_000), 0);
        assert_eq!(cfg.round_cap(2_000_000), 1);
        let t = peel(&path(4), &cfg).unwrap();
        assert!(t.stages.is_empty());
        assert_eq!(t.stop_reason, StopReason::RoundCap);
    }

    #[test]
    fn c5_and_path() {
        let t = peel(&cycle(5), &PeelConfig::uncapped(q(3, 8))).unwrap();
        assert!(t.stages.is_empty());
        assert_eq!(t.stop_reason, StopReason::DegreeThreshold);
        let t = peel(&path(4), &PeelConfig::uncapped(q(3, 8))).unwrap();
        assert_eq!(t.stages[0].removed, 0);
        assert_eq!(t.stages[0].degree, 1);
        let sizes: Vec<usize> = t.subgraphs().map(|(v, _)| v.len()).collect();
        assert!(sizes.windows(2).all(|w| w[0] == w[1] + 1));
        // the last edge has δ = 1 > 3/4
        assert_eq!(t.stop_reason, StopReason::DegreeThreshold);
        assert_eq!(t.final_vertices, vec![2, 3]);
        let t = peel(&SmallGraph::empty(3).unwrap(), &PeelConfig::uncapped(q(3, 8))).unwrap();
        assert_eq!((t.stages.len(), t.stop_reason), (3, StopReason::Exhausted));
    }

    #[test]
    fn stages_are_induced_subgraphs() {
        for seed in 0..30 {
            let g = random_triangle_free(12, 0.3, seed).unwrap();
            let t = peel(&g, &PeelConfig::uncapped(q(3, 8))).unwrap();
            let mut prev: Option<Vec<usize>> = None;
            for (vertices, sub) in t.subgraphs() {
                assert_eq!(*sub, g.induced(vertices));
                if let Some(p) = prev {
                    let gone: Vec<_> = p.iter().filter(|v| !vertices.contains(v)).collect();
                    assert_eq!(gone.len(), 1);
                }
                prev = Some(vertices.to_vec());
            }
            for s in &t.stages {
                assert_eq!(Some(s.degree), s.graph.min_degree());
                assert!(qi(s.degree as i64) <= q(3, 8) * qi(s.vertices.len() as i64));
            }
        }
        assert!(peel(&cycle(5), &PeelConfig::uncapped(q(1, 1))).is_err());
    }

    #[test]
    fn lemma1_arithmetic() {
        assert_eq!(lemma1_bound(10, 10, &qi(3)).unwrap(), qi(3));
        assert_eq!(lemma1_bound(10, 8, &qi(2)).unwrap(), q(89, 16));
        assert!(lemma1_bound(5, 6, &qi(0)).is_err());
    }

    #[test]
    fn extension() {
        let g = cycle(5);
        let full = Bipartition::from_part(&[0, 2]);
        assert_eq!(extend_bipartition(&g, &[0, 1, 2, 3, 4], &full).unwrap(), full);
        assert!(extend_bipartition(&g, &[0, 0], &full).is_err());
        assert!(extend_bipartition(&g, &[7], &full).is_err());
        for seed in 0..40 {
            let g = random_triangle_free(12, 0.4, seed).unwrap();
            let sub: Vec<usize> = (0..12).filter(|v| v % 3 != 0).collect();
            let h = g.induced(&sub);
            let best = d2_exact(&h).unwrap();
            let cut = extend_bipartition(&g, &sub, &best.cut).unwrap();
            // each appended vertex adds at most ⌊deg/2⌋ among placed neighbors
            let mut budget = best.removed;
            let mut placed: Vec<usize> = sub.clone();
            for v in (0..12).filter(|v| v % 3 == 0) {
                budget += placed.iter().filter(|&&u| g.has_edge(u, v)).count() / 2;
                placed.push(v);
            }
            let removed = removed_edges(&g, &cut);
            assert!(removed <= budget);
            assert!(removed >= d2_exact(&g).unwrap().removed);
        }
    }
}
