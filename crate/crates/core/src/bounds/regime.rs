use serde::Serialize;

use crate::error::Result;
use crate::rational::{binomial, q, Q};

use super::efps::efps_bound;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// Only the general bound `n²/23.5` applies.
    A,
    /// Dense: at least `dense · C(n,2)` edges.
    B,
    /// Sparse: at most `sparse · C(n,2)` edges.
    C,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegimeThresholds {
    pub dense: Q,
    pub sparse: Q,
    /// `n²/general_divisor` is claimed for every triangle-free graph.
    pub general_divisor: Q,
    /// `n²/sharp_divisor` is claimed in the dense and sparse regimes.
    pub sharp_divisor: Q,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        RegimeThresholds {
            dense: q(3197, 10_000),
            sparse: q(2486, 10_000),
            general_divisor: q(47, 2),
            sharp_divisor: q(25, 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegimeReport {
    pub n: u64,
    pub m: u64,
    #[serde(with = "crate::rational::serde_q")]
    pub edge_density: Q,
    pub regime: Regime,
    #[serde(with = "crate::rational::serde_q")]
    pub general_bound: Q,
    #[serde(serialize_with = "opt_q")]
    pub sharp_bound: Option<Q>,
    #[serde(with = "crate::rational::serde_q")]
    pub efps: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub half_edges: Q,
}

fn opt_q<S: serde::Serializer>(x: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => crate::rational::serde_q::serialize(v, s),
        None => s.serialize_none(),
    }
}

/// Which guarantees apply to triangle-free graphs with `n` vertices and `m` edges.
/// Threshold comparisons are exact: `m >= dense · C(n,2)` and `m <= sparse · C(n,2)`.
pub fn theorem3_regime(n: u64, m: u64, t: &RegimeThresholds) -> Result<RegimeReport> {
    let efps = efps_bound(n, m)?;
    let pairs = Q::from_integer((binomial(n as usize, 2) as i64).into());
    let edges = Q::from_integer((m as i64).into());
    let edge_density = if pairs == Q::from_integer(0.into()) {
        Q::from_integer(0.into())
    } else {
        &edges / &pairs
    };
    let regime = if edges >= &t.dense * &pairs {
        Regime::B
    } else if edges <= &t.sparse * &pairs {
        Regime::C
    } else {
        Regime::A
    };
    let n2 = Q::from_integer(((n * n) as i64).into());
    Ok(RegimeReport {
        n,
        m,
        edge_density,
        regime,
        general_bound: &n2 / &t.general_divisor,
        sharp_bound: (regime != Regime::A).then(|| &n2 / &t.sharp_divisor),
        efps,
        half_edges: edges / Q::from_integer(2.into()),
    })
}
