//! Flag expressions: exact expected removed edges of a rooted cut written as a
//! combination of rooted type counts.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cuts::{check_embedding, RootedCutDescriptor};
use crate::error::Result;
use crate::graphs::SmallGraph;
use crate::rational::{binomial, same_side, Q};

use super::types::RootedType;

/// `constant + Σ linear[T]·#(vertices of type T) + Σ quadratic[T]·#(pairs of type T)`
/// over the non-root vertices of a host with the root embedded.
///
/// Types containing a triangle are never generated, so the expression describes
/// triangle-free hosts only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagExpression {
    pub root: SmallGraph,
    #[serde(with = "crate::rational::serde_q")]
    pub constant: Q,
    #[serde(with = "type_map")]
    pub linear: BTreeMap<RootedType, Q>,
    #[serde(with = "type_map")]
    pub quadratic: BTreeMap<RootedType, Q>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalForm {
    /// Raw counts of vertices and pairs.
    Counts,
    /// Linear terms divided by `n-k`, quadratic terms by `C(n-k, 2)`.
    Density,
}

/// Type of the root plus one vertex adjacent exactly to `pattern`.
fn one_vertex_type(root: &SmallGraph, pattern: u32) -> RootedType {
    let k = root.n();
    let mut g = root.with_vertex().expect("roots are small");
    for a in 0..k {
        if pattern >> a & 1 == 1 {
            g.add_edge(a, k);
        }
    }
    RootedType::new(g, k).expect("k <= n")
}

/// Type of the root plus an edge `xy` with `x` on `px` and `y` on `py`.
fn edge_pair_type(root: &SmallGraph, px: u32, py: u32) -> RootedType {
    let k = root.n();
    let mut g = root
        .with_vertex()
        .and_then(|g| g.with_vertex())
        .expect("roots are small");
    for a in 0..k {
        if px >> a & 1 == 1 {
            g.add_edge(a, k);
        }
        if py >> a & 1 == 1 {
            g.add_edge(a, k + 1);
        }
    }
    g.add_edge(k, k + 1);
    RootedType::new(g, k).expect("k <= n")
}

pub fn cut_to_flag_expression(d: &RootedCutDescriptor) -> FlagExpression {
    let root = *d.root();
    let sides = d.root_side();
    let constant = root
        .edges()
        .map(|(a, b)| same_side(&sides[a], &sides[b]))
        .fold(Q::zero(), |acc, x| acc + x);
    let patterns: Vec<u32> = d.realizable_patterns().collect();
    let mut linear = BTreeMap::new();
    for &p in &patterns {
        let coeff = (0..root.n())
            .filter(|a| p >> a & 1 == 1)
            .map(|a| same_side(&sides[a], d.prob(p)))
            .fold(Q::zero(), |acc, x| acc + x);
        if !coeff.is_zero() {
            *linear.entry(one_vertex_type(&root, p)).or_insert_with(Q::zero) += coeff;
        }
    }
    let mut quadratic = BTreeMap::new();
    for (i, &px) in patterns.iter().enumerate() {
        for &py in &patterns[i..] {
            // a common root neighbor of an edge closes a triangle
            if px & py != 0 {
                continue;
            }
            let coeff = same_side(d.prob(px), d.prob(py));
            if !coeff.is_zero() {
                *quadratic
                    .entry(edge_pair_type(&root, px, py))
                    .or_insert_with(Q::zero) += coeff;
            }
        }
    }
    FlagExpression {
        root,
        constant,
        linear,
        quadratic,
    }
}

/// Evaluates the expression at an embedding by classifying every non-root vertex
/// and pair through its induced rooted type.
pub fn evaluate_expression(
    e: &FlagExpression,
    host: &SmallGraph,
    phi: &[usize],
    form: EvalForm,
) -> Result<Q> {
    check_embedding(host, &e.root, phi)?;
    let rest: Vec<usize> = (0..host.n()).filter(|v| !phi.contains(v)).collect();
    let mut lin = Q::zero();
    if !e.linear.is_empty() {
        for &x in &rest {
            if let Some(c) = e.linear.get(&RootedType::induced(host, phi, &[x])) {
                lin += c;
            }
        }
    }
    let mut quad = Q::zero();
    if !e.quadratic.is_empty() {
        for (i, &x) in rest.iter().enumerate() {
            for &y in &rest[i + 1..] {
                if let Some(c) = e.quadratic.get(&RootedType::induced(host, phi, &[x, y])) {
                    quad += c;
                }
            }
        }
    }
    if form == EvalForm::Density {
        let singles = rest.len() as i64;
        let pairs = binomial(rest.len(), 2) as i64;
        lin = if singles == 0 { Q::zero() } else { lin / Q::from_integer(singles.into()) };
        quad = if pairs == 0 { Q::zero() } else { quad / Q::from_integer(pairs.into()) };
    }
    Ok(&e.constant + lin + quad)
}

/// Probability that a uniformly random set of `|T| - k` non-root vertices induces,
/// with the embedded root, the rooted type `t`.
pub fn rooted_density(t: &RootedType, host: &SmallGraph, phi: &[usize]) -> Result<Q> {
    check_embedding(host, &t.root(), phi)?;
    let extra = t.size() - t.k();
    let rest: Vec<usize> = (0..host.n()).filter(|v| !phi.contains(v)).collect();
    let total = binomial(rest.len(), extra);
    if total == 0 {
        return Ok(Q::zero());
    }
    let mut hits = 0u64;
    for_each_subset(&rest, extra, &mut |subset| {
        if RootedType::induced(host, phi, subset) == *t {
            hits += 1;
        }
    });
    Ok(Q::new((hits as i64).into(), (total as i64).into()))
}

pub(crate) fn for_each_subset(items: &[usize], size: usize, visit: &mut dyn FnMut(&[usize])) {
    fn rec(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if cur.len() == size {
            visit(cur);
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, size, i + 1, cur, visit);
            cur.pop();
        }
    }
    rec(items, size, 0, &mut Vec::with_capacity(size), visit);
}

mod type_map {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::RootedType;
    use crate::graphs::SmallGraph;
    use crate::rational::{format_q, parse_q, Q};

    #[derive(Serialize, Deserialize)]
    struct Term {
        k: usize,
        graph: SmallGraph,
        coefficient: String,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<RootedType, Q>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(m.iter().map(|(t, c)| Term {
            k: t.k(),
            graph: *t.graph(),
            coefficient: format_q(c),
        }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<RootedType, Q>, D::Error> {
        use serde::de::Error;
        Vec::<Term>::deserialize(d)?
            .into_iter()
            .map(|t| {
                Ok((
                    RootedType::new(t.graph, t.k).map_err(D::Error::custom)?,
                    parse_q(&t.coefficient).map_err(D::Error::custom)?,
                ))
            })
            .collect()
    }
}
