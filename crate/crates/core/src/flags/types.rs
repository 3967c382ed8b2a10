use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{canonical_form_with_partition, SmallGraph};

/// A graph whose first `k` vertices are labeled roots, stored in its canonical form
/// under root-preserving isomorphism (roots keep labels `0..k`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootedType {
    k: usize,
    graph: SmallGraph,
}

impl RootedType {
    pub fn new(graph: SmallGraph, k: usize) -> Result<Self> {
        if k > graph.n() {
            return Err(Error::InvalidArgument(format!(
                "{k} roots in a {}-vertex graph",
                graph.n()
            )));
        }
        let mut cells: Vec<Vec<usize>> = (0..k).map(|a| vec![a]).collect();
        cells.push((k..graph.n()).collect());
        let (canon, _) = canonical_form_with_partition(&graph, &cells);
        Ok(RootedType { k, graph: canon })
    }

    /// Type induced by `phi` (roots, in order) followed by `extra` in `host`.
    pub fn induced(host: &SmallGraph, phi: &[usize], extra: &[usize]) -> Self {
        let order: Vec<usize> = phi.iter().chain(extra).copied().collect();
        RootedType::new(host.induced(&order), phi.len()).expect("k <= n")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn graph(&self) -> &SmallGraph {
        &self.graph
    }

    pub fn size(&self) -> usize {
        self.graph.n()
    }

    /// The labeled root graph on vertices `0..k`.
    pub fn root(&self) -> SmallGraph {
        self.graph.induced(&(0..self.k).collect::<Vec<_>>())
    }
}

/// All rooted types of the given size extending `root`; with `triangle_free`, only
/// those whose graph has no triangle.
pub fn rooted_types(root: &SmallGraph, size: usize, triangle_free: bool) -> Result<Vec<RootedType>> {
    let k = root.n();
    if size < k {
        return Err(Error::InvalidArgument(format!("type size {size} below root size {k}")));
    }
    let mut base = SmallGraph::empty(size)?;
    for (u, v) in root.edges() {
        base.add_edge(u, v);
    }
    let pairs: Vec<(usize, usize)> = (0..size)
        .flat_map(|v| (0..v).map(move |u| (u, v)))
        .filter(|&(_, v)| v >= k)
        .collect();
    if pairs.len() > 24 {
        return Err(Error::Capacity(format!("{} free pairs", pairs.len())));
    }
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << pairs.len() {
        let mut g = base;
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.add_edge(u, v);
            }
        }
        if !triangle_free || g.is_triangle_free() {
            out.insert(RootedType::new(g, k)?);
        }
    }
    Ok(out.into_iter().collect())
}
