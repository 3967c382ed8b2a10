use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::graph::{SmallGraph, MAX_VERTICES};

/// Replace base vertex `v` by an independent set of `sizes[v]` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowUpSpec {
    pub base: SmallGraph,
    pub sizes: Vec<usize>,
}

impl BlowUpSpec {
    pub fn new(base: SmallGraph, sizes: Vec<usize>) -> Self {
        BlowUpSpec { base, sizes }
    }

    pub fn uniform(base: SmallGraph, factor: usize) -> Self {
        let sizes = vec![factor; base.n()];
        BlowUpSpec { base, sizes }
    }

    pub fn total(&self) -> usize {
        self.sizes.iter().sum()
    }
}

/// Builds the blow-up; the copies of base vertex 0 come first, then those of 1, ...
/// Zero sizes are allowed and drop the class.
pub fn blow_up(spec: &BlowUpSpec) -> Result<SmallGraph> {
    if spec.sizes.len() != spec.base.n() {
        return Err(Error::InvalidArgument(format!(
            "{} class sizes for a {}-vertex base",
            spec.sizes.len(),
            spec.base.n()
        )));
    }
    let total = spec.total();
    if total > MAX_VERTICES {
        return Err(Error::Capacity(format!(
            "blow-up has {total} vertices, limit is {MAX_VERTICES}"
        )));
    }
    let mut offsets = Vec::with_capacity(spec.sizes.len());
    let mut acc = 0;
    for &s in &spec.sizes {
        offsets.push(acc);
        acc += s;
    }
    let mut g = SmallGraph::empty(total)?;
    for (u, v) in spec.base.edges() {
        for a in offsets[u]..offsets[u] + spec.sizes[u] {
            for b in offsets[v]..offsets[v] + spec.sizes[v] {
                g.add_edge(a, b);
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{cycle, enumerate_triangle_free, is_isomorphic};

    #[test]
    fn identity_and_counts() {
        let c5 = cycle(5);
        assert!(is_isomorphic(&blow_up(&BlowUpSpec::uniform(c5, 1)).unwrap(), &c5));
        for t in 1..=6 {
            let g = blow_up(&BlowUpSpec::uniform(c5, t)).unwrap();
            assert_eq!(g.edge_count(), 5 * t * t);
            assert_eq!(g.n(), 5 * t);
        }
        let g = blow_up(&BlowUpSpec::new(c5, vec![1, 2, 3, 2, 1])).unwrap();
        assert_eq!(g.edge_count(), 2 + 6 + 6 + 2 + 1);
    }

    #[test]
    fn preserves_triangle_freeness() {
        for n in 1..=5 {
            for g in enumerate_triangle_free(n).unwrap() {
                let b = blow_up(&BlowUpSpec::uniform(g, 2)).unwrap();
                assert!(b.is_triangle_free());
                assert_eq!(b.edge_count(), 4 * g.edge_count());
            }
        }
        let k3 = SmallGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!blow_up(&BlowUpSpec::uniform(k3, 2)).unwrap().is_triangle_free());
    }

    #[test]
    fn errors() {
        assert!(matches!(
            blow_up(&BlowUpSpec::uniform(cycle(5), 7)),
            Err(Error::Capacity(_))
        ));
        assert!(matches!(
            blow_up(&BlowUpSpec::new(cycle(5), vec![1, 1])),
            Err(Error::InvalidArgument(_))
        ));
    }
}
