//! Enumeration of rooted-cut families up to root symmetry and part swap.
//!
//! Family members carry root sides of 1/2: the roots are a bounded number of
//! vertices and do not affect the asymptotic count of removed edges.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{cycle, enumerate_triangle_free, SmallGraph};
use crate::rational::{complement, format_q, half, q, Q};

use super::descriptor::{permute_pattern, RootedCutDescriptor, MAX_ROOT_SIZE};

/// Largest root size for the "any triangle-free root" constraint.
pub const MAX_FAMILY_ROOT: usize = 5;
const MAX_ASSIGNMENTS_PER_ROOT: u64 = 1 << 26;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootConstraint {
    /// Every triangle-free root within the size range.
    Any,
    /// Exactly this root graph.
    Graph(SmallGraph),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutFamilySpec {
    pub min_root_size: usize,
    pub max_root_size: usize,
    #[serde(with = "crate::rational::serde_q::vec")]
    pub allowed_probs: Vec<Q>,
    pub root_constraint: RootConstraint,
}

impl CutFamilySpec {
    pub fn any_root(min_root_size: usize, max_root_size: usize, allowed_probs: Vec<Q>) -> Self {
        CutFamilySpec {
            min_root_size,
            max_root_size,
            allowed_probs,
            root_constraint: RootConstraint::Any,
        }
    }

    pub fn fixed_root(root: SmallGraph, allowed_probs: Vec<Q>) -> Self {
        CutFamilySpec {
            min_root_size: root.n(),
            max_root_size: root.n(),
            allowed_probs,
            root_constraint: RootConstraint::Graph(root),
        }
    }

    fn roots(&self) -> Result<Vec<SmallGraph>> {
        match &self.root_constraint {
            RootConstraint::Graph(h) => {
                if h.n() > MAX_ROOT_SIZE {
                    return Err(Error::Capacity(format!(
                        "root of {} vertices exceeds {MAX_ROOT_SIZE}",
                        h.n()
                    )));
                }
                if !h.is_triangle_free() {
                    return Err(Error::InvalidArgument("root graph contains a triangle".into()));
                }
                Ok(vec![*h])
            }
            RootConstraint::Any => {
                if self.max_root_size > MAX_FAMILY_ROOT {
                    return Err(Error::Capacity(format!(
                        "family roots are limited to {MAX_FAMILY_ROOT} vertices"
                    )));
                }
                let mut roots = Vec::new();
                for k in self.min_root_size..=self.max_root_size {
                    if k == 0 {
                        roots.push(SmallGraph::empty(0)?);
                    } else {
                        roots.extend(enumerate_triangle_free(k)?);
                    }
                }
                Ok(roots)
            }
        }
    }
}

/// The four families listed alongside their published counts.
pub fn reference_families() -> Vec<(&'static str, CutFamilySpec, usize)> {
    let three = vec![Q::zero(), half(), Q::one()];
    let two = vec![Q::zero(), Q::one()];
    vec![
        ("root<=2 probs{0,1/2,1}", CutFamilySpec::any_root(0, 2, three.clone()), 10),
        ("root<=3 probs{0,1/2,1}", CutFamilySpec::any_root(0, 3, three), 108),
        ("root=4 probs{0,1}", CutFamilySpec::any_root(4, 4, two.clone()), 953),
        ("root=C5 probs{0,1}", CutFamilySpec::fixed_root(cycle(5), two), 125),
    ]
}

/// Root permutations `perm` with `root.relabel(perm) == root`.
pub fn root_automorphisms(root: &SmallGraph) -> Vec<Vec<usize>> {
    let k = root.n();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..k).collect();
    permutations(&mut perm, 0, &mut |p| {
        if root.relabel(p) == *root {
            out.push(p.to_vec());
        }
    });
    out.sort();
    out
}

fn permutations(perm: &mut [usize], start: usize, visit: &mut dyn FnMut(&[usize])) {
    if start == perm.len() {
        visit(perm);
        return;
    }
    for i in start..perm.len() {
        perm.swap(start, i);
        permutations(perm, start + 1, visit);
        perm.swap(start, i);
    }
}

/// Every descriptor of the family, one per class of the equivalence generated by
/// root automorphisms and the global part swap. Only realizable patterns (independent
/// sets of the root) are varied; inert patterns hold 1/2. Output order: roots by
/// size then canonical order, assignments lexicographically by pattern.
pub fn enumerate_family(spec: &CutFamilySpec) -> Result<Vec<RootedCutDescriptor>> {
    let mut probs = spec.allowed_probs.clone();
    probs.sort();
    probs.dedup();
    if probs.is_empty() {
        return Err(Error::InvalidArgument("no allowed probabilities".into()));
    }
    if let Some(p) = probs.iter().find(|p| **p < Q::zero() || **p > Q::one()) {
        return Err(Error::InvalidArgument(format!(
            "allowed probability {} outside [0,1]",
            format_q(p)
        )));
    }
    if spec.min_root_size > spec.max_root_size {
        return Err(Error::InvalidArgument("min root size exceeds max".into()));
    }
    let mut out = Vec::new();
    for root in spec.roots()? {
        out.extend(enumerate_for_root(&root, &probs)?);
    }
    Ok(out)
}

fn enumerate_for_root(root: &SmallGraph, probs: &[Q]) -> Result<Vec<RootedCutDescriptor>> {
    let k = root.n();
    let patterns: Vec<u32> = (0u32..1 << k).filter(|&p| root.is_independent(p)).collect();
    let mut position = vec![usize::MAX; 1 << k];
    for (i, &p) in patterns.iter().enumerate() {
        position[p as usize] = i;
    }
    // each group element as (index map, whether it swaps parts)
    let complement_index: Option<Vec<u8>> = probs
        .iter()
        .map(|p| probs.iter().position(|x| *x == complement(p)).map(|i| i as u8))
        .collect();
    let mut group: Vec<(Vec<usize>, bool)> = Vec::new();
    for perm in root_automorphisms(root) {
        let map: Vec<usize> = patterns
            .iter()
            .map(|&p| position[permute_pattern(p, &perm) as usize])
            .collect();
        group.push((map.clone(), false));
        if complement_index.is_some() {
            group.push((map, true));
        }
    }
    let base = probs.len() as u64;
    let total = (base as f64).powi(patterns.len() as i32);
    if total > MAX_ASSIGNMENTS_PER_ROOT as f64 {
        return Err(Error::Capacity(format!(
            "{} assignments for a {k}-vertex root",
            total
        )));
    }
    let total = base.pow(patterns.len() as u32);
    let len = patterns.len();
    let canonical: Vec<Vec<u8>> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let mut v = vec![0u8; len];
            let mut c = code;
            for slot in v.iter_mut().rev() {
                *slot = (c % base) as u8;
                c /= base;
            }
            let mut image = vec![0u8; len];
            for (map, swap) in &group {
                for (i, &j) in map.iter().enumerate() {
                    image[j] = if *swap {
                        complement_index.as_ref().expect("swap only when closed")[v[i] as usize]
                    } else {
                        v[i]
                    };
                }
                if image < v {
                    return None;
                }
            }
            Some(v)
        })
        .collect();
    canonical
        .into_iter()
        .map(|v| {
            let mut class_prob = vec![half(); 1 << k];
            for (i, &p) in patterns.iter().enumerate() {
                class_prob[p as usize] = probs[v[i] as usize].clone();
            }
            RootedCutDescriptor::new(*root, vec![q(1, 2); k], class_prob)
        })
        .collect()
}
