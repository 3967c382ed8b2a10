use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported vertex count: one adjacency row per `u32`.
pub const MAX_VERTICES: usize = 32;

/// Undirected simple graph on at most 32 vertices stored as adjacency rows.
///
/// Bit `j` of `adj[i]` is set iff `{i, j}` is an edge. Rows beyond `n` are zero,
/// so the derived ordering and hashing are structural.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallGraph {
    n: usize,
    adj: [u32; MAX_VERTICES],
}

impl SmallGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity(format!(
                "{n} vertices exceed the {MAX_VERTICES}-vertex limit"
            )));
        }
        Ok(SmallGraph {
            n,
            adj: [0; MAX_VERTICES],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Mask with the low `n` bits set.
    #[inline]
    pub fn vertex_mask(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Adds `{u,v}`. Panics on a loop; callers validate indices.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loops are not allowed");
        assert!(u < self.n && v < self.n);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u32 {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.n]
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n)
                .filter(move |&v| self.has_edge(u, v))
                .map(move |v| (u, v))
        })
    }

    /// Edges with both endpoints inside `mask`.
    pub fn edges_within(&self, mask: u32) -> usize {
        let mut total = 0;
        let mut rest = mask & self.vertex_mask();
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            total += (self.adj[v] & mask).count_ones() as usize;
        }
        total / 2
    }

    pub fn is_triangle_free(&self) -> bool {
        for u in 0..self.n {
            let higher = self.adj[u] & !((2u32 << u).wrapping_sub(1));
            let mut rest = higher;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if self.adj[u] & self.adj[v] != 0 {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_independent(&self, mask: u32) -> bool {
        self.edges_within(mask) == 0
    }

    /// Subgraph induced on `vertices`, relabeled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> SmallGraph {
        let mut g = SmallGraph {
            n: vertices.len(),
            adj: [0; MAX_VERTICES],
        };
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
            }
        }
        g
    }

    /// Subgraph induced on the vertices of `mask`, in ascending order.
    pub fn induced_mask(&self, mask: u32) -> (SmallGraph, Vec<usize>) {
        let vertices = mask_to_vec(mask & self.vertex_mask());
        (self.induced(&vertices), vertices)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> SmallGraph {
        assert_eq!(perm.len(), self.n);
        let mut g = SmallGraph {
            n: self.n,
            adj: [0; MAX_VERTICES],
        };
        for (u, v) in self.edges() {
            g.adj[perm[u]] |= 1 << perm[v];
            g.adj[perm[v]] |= 1 << perm[u];
        }
        g
    }

    /// Copy with one extra isolated vertex.
    pub fn with_vertex(&self) -> Result<SmallGraph> {
        let mut g = Self::empty(self.n + 1)?;
        g.adj[..self.n].copy_from_slice(&self.adj[..self.n]);
        Ok(g)
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for v in iter_bits(self.adj[u]) {
                    if color[v] == u8::MAX {
                        color[v] = 1 - color[u];
                        stack.push(v);
                    } else if color[v] == color[u] {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl fmt::Debug for SmallGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges().collect();
        write!(f, "SmallGraph(n={}, edges={:?})", self.n, edges)
    }
}

impl Serialize for SmallGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n,
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SmallGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(d)?;
        let edges: Vec<_> = repr.edges.iter().map(|e| (e[0], e[1])).collect();
        SmallGraph::from_edges(repr.n, &edges).map_err(serde::de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<[usize; 2]>,
}

/// Indices of the set bits of `mask`, ascending.
pub fn iter_bits(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

pub(crate) fn mask_to_vec(mask: u32) -> Vec<usize> {
    iter_bits(mask).collect()
}

/// A two-sided vertex partition; bit `i` set means vertex `i` lies in part A.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bipartition {
    pub side: u32,
}

impl Bipartition {
    pub fn new(side: u32) -> Self {
        Bipartition { side }
    }

    pub fn from_part(part_a: &[usize]) -> Self {
        Bipartition {
            side: part_a.iter().fold(0, |m, &v| m | 1 << v),
        }
    }

    #[inline]
    pub fn in_a(&self, v: usize) -> bool {
        self.side >> v & 1 == 1
    }

    pub fn part_a(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|&v| self.in_a(v)).collect()
    }

    pub fn part_b(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|&v| !self.in_a(v)).collect()
    }
}
