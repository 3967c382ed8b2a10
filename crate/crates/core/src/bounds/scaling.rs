use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{blow_up, c5_coloring, d2_exact, BlowUpSpec, SmallGraph, MAX_D2_VERTICES};
use crate::rational::{q, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScalingReport {
    pub factor: usize,
    pub d2_base: usize,
    pub d2_blown: usize,
    #[serde(with = "crate::rational::serde_q")]
    pub base_ratio: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub blown_ratio: Q,
    pub holds: bool,
}

/// Compares `D₂(G)/n²` with `D₂(G')/(kn)²` for the blow-up `G'` replacing every
/// vertex by `k` independent copies.
pub fn blowup_scaling_check(g: &SmallGraph, factor: usize) -> Result<ScalingReport> {
    let n = g.n();
    if factor == 0 || n == 0 {
        return Err(Error::InvalidArgument("need a nonempty graph and a positive factor".into()));
    }
    if n * factor > MAX_D2_VERTICES {
        return Err(Error::Capacity(format!(
            "blow-up has {} vertices, limit {MAX_D2_VERTICES}",
            n * factor
        )));
    }
    let blown = blow_up(&BlowUpSpec::uniform(*g, factor))?;
    let d2_base = d2_exact(g)?.removed;
    let d2_blown = d2_exact(&blown)?.removed;
    let base_ratio = q(d2_base as i64, (n * n) as i64);
    let blown_ratio = q(d2_blown as i64, (n * n * factor * factor) as i64);
    Ok(ScalingReport {
        factor,
        d2_base,
        d2_blown,
        holds: blown_ratio >= base_ratio,
        base_ratio,
        blown_ratio,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HaggkvistReport {
    pub min_degree: Option<usize>,
    #[serde(with = "crate::rational::serde_q")]
    pub threshold: Q,
    pub premise: bool,
    /// A homomorphism to `C5`, searched for when the premise holds and the graph is
    /// triangle-free.
    pub c5_coloring: Option<Vec<u8>>,
}

/// Whether `δ(G) > 3n/8`, the hypothesis under which a triangle-free graph is a
/// subgraph of a blow-up of `C5`.
pub fn haggkvist_premise(g: &SmallGraph) -> HaggkvistReport {
    let threshold = q(3 * g.n() as i64, 8);
    let min_degree = g.min_degree();
    let premise = min_degree.is_some_and(|d| Q::from_integer((d as i64).into()) > threshold);
    let c5_coloring = if premise && g.is_triangle_free() { c5_coloring(g) } else { None };
    HaggkvistReport {
        min_degree,
        threshold,
        premise,
        c5_coloring,
    }
}
