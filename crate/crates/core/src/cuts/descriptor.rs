use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::SmallGraph;
use crate::rational::{complement, format_q, half, parse_q, Q};

/// Largest supported root size.
pub const MAX_ROOT_SIZE: usize = 6;

/// A randomized bipartition scheme anchored at an induced copy of `root`.
///
/// Root vertex `a` goes to part A with probability `root_side[a]`. Every other
/// vertex is classified by its adjacency pattern to the root (bit `a` set iff it is
/// adjacent to root vertex `a`) and goes to part A with probability
/// `class_prob[pattern]`, independently of everything else.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootedCutDescriptor {
    root: SmallGraph,
    root_side: Vec<Q>,
    class_prob: Vec<Q>,
}

impl RootedCutDescriptor {
    pub fn new(root: SmallGraph, root_side: Vec<Q>, class_prob: Vec<Q>) -> Result<Self> {
        let k = root.n();
        if k > MAX_ROOT_SIZE {
            return Err(Error::Capacity(format!(
                "roots are limited to {MAX_ROOT_SIZE} vertices, got {k}"
            )));
        }
        if root_side.len() != k {
            return Err(Error::InvalidArgument(format!(
                "{} root sides for a {k}-vertex root",
                root_side.len()
            )));
        }
        if class_prob.len() != 1 << k {
            return Err(Error::InvalidArgument(format!(
                "{} class probabilities, expected {}",
                class_prob.len(),
                1 << k
            )));
        }
        for p in root_side.iter().chain(&class_prob) {
            if *p < Q::zero() || *p > Q::one() {
                return Err(Error::InvalidArgument(format!(
                    "probability {} outside [0,1]",
                    format_q(p)
                )));
            }
        }
        Ok(RootedCutDescriptor {
            root,
            root_side,
            class_prob,
        })
    }

    pub fn root(&self) -> &SmallGraph {
        &self.root
    }

    pub fn k(&self) -> usize {
        self.root.n()
    }

    pub fn root_side(&self) -> &[Q] {
        &self.root_side
    }

    pub fn class_prob(&self) -> &[Q] {
        &self.class_prob
    }

    pub fn prob(&self, pattern: u32) -> &Q {
        &self.class_prob[pattern as usize]
    }

    /// Whether a vertex with this pattern can exist in a triangle-free host, i.e.
    /// whether the pattern is an independent set of the root.
    pub fn is_realizable(&self, pattern: u32) -> bool {
        self.root.is_independent(pattern)
    }

    pub fn realizable_patterns(&self) -> impl Iterator<Item = u32> + '_ {
        (0u32..1 << self.k()).filter(|&p| self.is_realizable(p))
    }

    pub fn is_deterministic(&self) -> bool {
        let zero_one = |p: &Q| p.is_zero() || p.is_one();
        self.root_side.iter().all(zero_one)
            && self
                .realizable_patterns()
                .all(|p| zero_one(&self.class_prob[p as usize]))
    }

    /// Global part swap: every probability `x` becomes `1 - x`.
    pub fn swapped(&self) -> Self {
        RootedCutDescriptor {
            root: self.root,
            root_side: self.root_side.iter().map(complement).collect(),
            class_prob: self.class_prob.iter().map(complement).collect(),
        }
    }

    /// Relabels root vertex `a` as `perm[a]`, moving sides and patterns along.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let k = self.k();
        let mut root_side = vec![Q::zero(); k];
        for (a, side) in self.root_side.iter().enumerate() {
            root_side[perm[a]] = side.clone();
        }
        let mut class_prob = vec![Q::zero(); 1 << k];
        for (pattern, p) in self.class_prob.iter().enumerate() {
            class_prob[permute_pattern(pattern as u32, perm) as usize] = p.clone();
        }
        RootedCutDescriptor {
            root: self.root.relabel(perm),
            root_side,
            class_prob,
        }
    }
}

pub(crate) fn permute_pattern(pattern: u32, perm: &[usize]) -> u32 {
    perm.iter()
        .enumerate()
        .filter(|&(a, _)| pattern >> a & 1 == 1)
        .fold(0, |acc, (_, &b)| acc | 1 << b)
}

/// Parts `N(v)` and its complement: the root goes to B, its neighbors to A.
pub fn single_vertex_cut() -> RootedCutDescriptor {
    RootedCutDescriptor::new(
        SmallGraph::empty(1).expect("k=1"),
        vec![Q::zero()],
        vec![Q::zero(), Q::one()],
    )
    .expect("valid probabilities")
}

/// Root edge `uv` with `u` in A and `v` in B; `N(u)` joins B, `N(v)` joins A and the
/// common non-neighborhood is split uniformly at random.
pub fn edge_cut() -> RootedCutDescriptor {
    RootedCutDescriptor::new(
        SmallGraph::from_edges(2, &[(0, 1)]).expect("k=2"),
        vec![Q::one(), Q::zero()],
        vec![half(), Q::zero(), Q::one(), half()],
    )
    .expect("valid probabilities")
}

/// Three disjoint root edges `u_i v_i` (vertices `2i`, `2i+1`). A vertex follows the
/// edge-cut rule of the first root edge it touches; vertices touching none are split
/// uniformly. Vertices adjacent to both ends of a root edge are inert and get 1/2.
pub fn triple_edge_cut() -> RootedCutDescriptor {
    let root = SmallGraph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]).expect("k=6");
    let root_side = (0..6).map(|a| if a % 2 == 0 { Q::one() } else { Q::zero() }).collect();
    let class_prob = (0u32..64)
        .map(|pattern| {
            for e in 0..3 {
                let (u, v) = (pattern >> (2 * e) & 1, pattern >> (2 * e + 1) & 1);
                match (u, v) {
                    (1, 1) => return half(),
                    (1, 0) => return Q::zero(),
                    (0, 1) => return Q::one(),
                    _ => {}
                }
            }
            half()
        })
        .collect();
    RootedCutDescriptor::new(root, root_side, class_prob).expect("valid probabilities")
}

/// Root used by the Clebsch-targeted cut: the 4-cycle `v0 v1 v2 v3` plus pendant
/// vertices `v4 ~ v0` and `v5 ~ v1`.
pub fn clebsch_root() -> SmallGraph {
    SmallGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (4, 0), (1, 5)]).expect("k=6")
}

/// The two readings of the Clebsch-cut pseudo sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClebschPreset {
    /// `{v0, v2, v5}` against `{v1, v3, v4}`.
    ZeroTwoFive,
    /// `{v1, v2, v5}` against `{v0, v3, v4}`.
    OneTwoFive,
}

impl ClebschPreset {
    pub fn pseudo_sides(self) -> (Vec<usize>, Vec<usize>) {
        match self {
            ClebschPreset::ZeroTwoFive => (vec![0, 2, 5], vec![1, 3, 4]),
            ClebschPreset::OneTwoFive => (vec![1, 2, 5], vec![0, 3, 4]),
        }
    }

    pub fn descriptor(self) -> RootedCutDescriptor {
        let (first, second) = self.pseudo_sides();
        clebsch_cut(&first, &second).expect("presets are disjoint")
    }
}

/// Deterministic cut on [`clebsch_root`] that treats the two pseudo-side sets as if
/// they were parts. Roots in `first` go to A, roots in `second` go to B. Any other
/// vertex (including uncovered roots) goes to A iff it has a neighbor among the roots
/// and all of its root neighbors lie in `second`; otherwise it goes to B.
pub fn clebsch_cut(first: &[usize], second: &[usize]) -> Result<RootedCutDescriptor> {
    let root = clebsch_root();
    let mask = |set: &[usize]| -> Result<u32> {
        set.iter().try_fold(0u32, |m, &v| {
            if v >= 6 {
                Err(Error::InvalidArgument(format!("root vertex v{v} does not exist")))
            } else {
                Ok(m | 1 << v)
            }
        })
    };
    let (a, b) = (mask(first)?, mask(second)?);
    if a & b != 0 {
        let shared: Vec<String> = (0..6)
            .filter(|v| (a & b) >> v & 1 == 1)
            .map(|v| format!("v{v}"))
            .collect();
        return Err(Error::InvalidArgument(format!(
            "pseudo sides overlap at {}",
            shared.join(", ")
        )));
    }
    let rule = |pattern: u32| -> Q {
        if pattern != 0 && pattern & !b == 0 {
            Q::one()
        } else {
            Q::zero()
        }
    };
    let root_side = (0..6)
        .map(|v| {
            if a >> v & 1 == 1 {
                Q::one()
            } else if b >> v & 1 == 1 {
                Q::zero()
            } else {
                rule(root.neighbors(v))
            }
        })
        .collect();
    let class_prob = (0u32..64).map(rule).collect();
    RootedCutDescriptor::new(root, root_side, class_prob)
}

/// Empty root, every vertex to A with probability 1/2.
pub fn uniform_random_cut() -> RootedCutDescriptor {
    RootedCutDescriptor::new(SmallGraph::empty(0).expect("k=0"), vec![], vec![half()])
        .expect("valid probabilities")
}

#[derive(Serialize, Deserialize)]
struct DescriptorRepr {
    root: SmallGraph,
    root_side: Vec<String>,
    class_prob: BTreeMap<String, String>,
}

impl Serialize for RootedCutDescriptor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DescriptorRepr {
            root: self.root,
            root_side: self.root_side.iter().map(format_q).collect(),
            class_prob: self
                .class_prob
                .iter()
                .enumerate()
                .map(|(i, p)| (i.to_string(), format_q(p)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootedCutDescriptor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = DescriptorRepr::deserialize(d)?;
        let k = repr.root.n();
        if k > MAX_ROOT_SIZE {
            return Err(D::Error::custom(format!("root of {k} vertices is too large")));
        }
        let root_side = repr
            .root_side
            .iter()
            .map(|s| parse_q(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let mut class_prob = vec![None; 1 << k];
        for (key, value) in &repr.class_prob {
            let idx: usize = key
                .parse()
                .map_err(|_| D::Error::custom(format!("bad pattern key {key:?}")))?;
            let slot = class_prob
                .get_mut(idx)
                .ok_or_else(|| D::Error::custom(format!("pattern {idx} out of range")))?;
            *slot = Some(parse_q(value).map_err(D::Error::custom)?);
        }
        let class_prob = class_prob
            .into_iter()
            .enumerate()
            .map(|(i, p)| p.ok_or_else(|| D::Error::custom(format!("pattern {i} missing"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        RootedCutDescriptor::new(repr.root, root_side, class_prob).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn triple_edge_rule() {
        let d = triple_edge_cut();
        assert_eq!(d.k(), 6);
        assert_eq!(d.root().edge_count(), 3);
        // adjacent to u1 only
        assert_eq!(*d.prob(0b000001), Q::zero());
        // adjacent to v2 only
        assert_eq!(*d.prob(0b001000), Q::one());
        // priority: touches v1 and u2
        assert_eq!(*d.prob(0b000110), Q::one());
        assert_eq!(*d.prob(0), half());
        assert_eq!(d.root_side(), &[Q::one(), Q::zero(), Q::one(), Q::zero(), Q::one(), Q::zero()]);
    }

    #[test]
    fn clebsch_cut_validation() {
        let err = clebsch_cut(&[1, 2, 5], &[1, 3, 4]).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(ref m) if m.contains("v1")));
        assert!(clebsch_cut(&[2, 5], &[3, 4]).unwrap().is_deterministic());
        assert!(clebsch_cut(&[9], &[]).is_err());
        for preset in [ClebschPreset::ZeroTwoFive, ClebschPreset::OneTwoFive] {
            assert!(preset.descriptor().is_deterministic());
        }
    }

    #[test]
    fn constructor_validation() {
        let root = SmallGraph::empty(1).unwrap();
        assert!(RootedCutDescriptor::new(root, vec![q(3, 2)], vec![Q::zero(); 2]).is_err());
        assert!(RootedCutDescriptor::new(root, vec![], vec![Q::zero(); 2]).is_err());
        assert!(RootedCutDescriptor::new(root, vec![Q::zero()], vec![Q::zero(); 3]).is_err());
        let big = SmallGraph::empty(7).unwrap();
        assert!(matches!(
            RootedCutDescriptor::new(big, vec![Q::zero(); 7], vec![Q::zero(); 128]),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let d = edge_cut();
        let text = serde_json::to_string(&d).unwrap();
        assert!(text.starts_with(r#"{"root":{"n":2,"edges":[[0,1]]},"root_side":["1/1","0/1"]"#));
        let back: RootedCutDescriptor = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
        let missing = r#"{"root":{"n":1,"edges":[]},"root_side":["0/1"],"class_prob":{"0":"1/2"}}"#;
        assert!(serde_json::from_str::<RootedCutDescriptor>(missing).is_err());
    }

    #[test]
    fn swap_and_permute() {
        let d = edge_cut();
        let s = d.swapped();
        assert_eq!(s.root_side(), &[Q::zero(), Q::one()]);
        let p = d.permuted(&[1, 0]);
        // swapping the endpoints and the parts gives back the edge cut
        assert_eq!(p.swapped(), d);
    }
}
