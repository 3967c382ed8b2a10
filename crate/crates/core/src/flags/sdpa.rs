use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{decimal_string, parse_decimal, qi, to_f64, Q};

use super::sdp::SdpProblem;

/// A problem in SDPA sparse form: find `x` minimizing `c·x` with
/// `Σ_i x_i F_i - F_0` positive semidefinite. Negative block sizes are diagonal blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SdpaData {
    pub block_sizes: Vec<i64>,
    pub objective: Vec<Q>,
    /// `(matrix, block, i, j) -> value` with 1-based block and indices and `i <= j`.
    pub entries: BTreeMap<(usize, usize, usize, usize), Q>,
}

impl SdpaData {
    pub fn variables(&self) -> usize {
        self.objective.len()
    }

    fn add(&mut self, mat: usize, block: usize, i: usize, j: usize, value: Q) {
        if value.is_zero() {
            return;
        }
        let key = (mat, block, i.min(j), i.max(j));
        let slot = self.entries.entry(key).or_insert_with(Q::zero);
        *slot += value;
        if slot.is_zero() {
            self.entries.remove(&key);
        }
    }

    /// Variables are `λ`, then one `mu_c` per cut, then the upper triangle of each
    /// block row by row. The last block is diagonal and holds `mu >= 0`, one row per
    /// constraint graph and the two halves of `Σ mu = 1`.
    pub fn from_problem(p: &SdpProblem) -> Self {
        let cuts = p.cuts.len();
        let graphs = p.constraint_graphs.len();
        let sizes = p.block_sizes();
        let tri: usize = sizes.iter().map(|d| d * (d + 1) / 2).sum();
        let mut objective = vec![Q::zero(); 1 + cuts + tri];
        objective[0] = Q::one();
        let lp = sizes.len() + 1;
        let mut data = SdpaData {
            block_sizes: sizes
                .iter()
                .map(|&d| d as i64)
                .chain([-((cuts + graphs + 2) as i64)])
                .collect(),
            objective,
            entries: BTreeMap::new(),
        };
        let row = |f: usize| cuts + f + 1;
        let (sum_ge, sum_le) = (cuts + graphs + 1, cuts + graphs + 2);
        for f in 0..graphs {
            data.add(1, lp, row(f), row(f), qi(2));
        }
        for c in 0..cuts {
            let var = 2 + c;
            data.add(var, lp, c + 1, c + 1, Q::one());
            for f in 0..graphs {
                data.add(var, lp, row(f), row(f), -p.cut_rows[c][f].clone());
            }
            data.add(var, lp, sum_ge, sum_ge, Q::one());
            data.add(var, lp, sum_le, sum_le, -Q::one());
        }
        data.add(0, lp, sum_ge, sum_ge, Q::one());
        data.add(0, lp, sum_le, sum_le, -Q::one());
        let mut var = 2 + cuts;
        for (j, &d) in sizes.iter().enumerate() {
            for s in 0..d {
                for t in s..d {
                    data.add(var, j + 1, s + 1, t + 1, Q::one());
                    let weight = if s == t { qi(1) } else { qi(2) };
                    for f in 0..graphs {
                        let m = &p.product_blocks[j][f][s][t];
                        data.add(var, lp, row(f), row(f), -(m * &weight));
                    }
                    var += 1;
                }
            }
        }
        data
    }

    pub fn to_sdpa_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.variables());
        let _ = writeln!(out, "{}", self.block_sizes.len());
        let sizes: Vec<String> = self.block_sizes.iter().map(|s| s.to_string()).collect();
        let _ = writeln!(out, "{}", sizes.join(" "));
        let c: Vec<String> = self.objective.iter().map(decimal_string).collect();
        let _ = writeln!(out, "{}", c.join(" "));
        for ((mat, block, i, j), v) in &self.entries {
            let _ = writeln!(out, "{mat} {block} {i} {j} {}", decimal_string(v));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut offset = 0;
        let mut lines = Vec::new();
        for line in text.split_inclusive('\n') {
            let body = line.trim();
            if !body.is_empty() && !body.starts_with('"') && !body.starts_with('*') {
                lines.push((offset, body));
            }
            offset += line.len();
        }
        let mut it = lines.into_iter();
        let mut next = |what: &str| it.next().ok_or_else(|| Error::parse(text.len(), format!("missing {what}")));
        let (at, m) = next("variable count")?;
        let m: usize = m.parse().map_err(|_| Error::parse(at, "bad variable count"))?;
        let (at, nb) = next("block count")?;
        let nb: usize = nb.parse().map_err(|_| Error::parse(at, "bad block count"))?;
        let (at, sizes) = next("block sizes")?;
        let block_sizes = sizes
            .split(|c: char| c.is_whitespace() || ",(){}".contains(c))
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<i64>().map_err(|_| Error::parse(at, format!("bad block size {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if block_sizes.len() != nb || block_sizes.contains(&0) {
            return Err(Error::parse(at, "block sizes do not match block count"));
        }
        let (at, c) = next("objective")?;
        let objective = c
            .split_whitespace()
            .map(|s| parse_decimal(s).map_err(|_| Error::parse(at, format!("bad objective value {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if objective.len() != m {
            return Err(Error::parse(at, format!("objective has {} values, expected {m}", objective.len())));
        }
        let mut data = SdpaData {
            block_sizes,
            objective,
            entries: BTreeMap::new(),
        };
        for (at, line) in it {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 5 {
                return Err(Error::parse(at, "entry needs 5 fields"));
            }
            let ints = fields[..4]
                .iter()
                .map(|s| s.parse::<usize>().map_err(|_| Error::parse(at, format!("bad index {s:?}"))))
                .collect::<Result<Vec<_>>>()?;
            let (mat, block, i, j) = (ints[0], ints[1], ints[2], ints[3]);
            let size = block
                .checked_sub(1)
                .and_then(|b| data.block_sizes.get(b))
                .ok_or_else(|| Error::parse(at, format!("no block {block}")))?
                .unsigned_abs() as usize;
            let diagonal = data.block_sizes[block - 1] < 0;
            if mat > m || i == 0 || j == 0 || i > size || j > size || (diagonal && i != j) {
                return Err(Error::parse(at, "entry outside the declared structure"));
            }
            let v = parse_decimal(fields[4]).map_err(|_| Error::parse(at, "bad entry value"))?;
            data.add(mat, block, i, j, v);
        }
        Ok(data)
    }

    /// Equality up to the written precision: exact for values with terminating
    /// decimals, identical `f64` for the rest.
    pub fn matches_written(&self, parsed: &SdpaData) -> bool {
        let same = |a: &Q, b: &Q| a == b || to_f64(a) == to_f64(b);
        self.block_sizes == parsed.block_sizes
            && self.objective.len() == parsed.objective.len()
            && self.objective.iter().zip(&parsed.objective).all(|(a, b)| same(a, b))
            && self.entries.len() == parsed.entries.len()
            && self
                .entries
                .iter()
                .zip(&parsed.entries)
                .all(|((ka, va), (kb, vb))| ka == kb && same(va, vb))
    }
}

pub fn emit_sdpa(p: &SdpProblem, path: &Path) -> Result<()> {
    std::fs::write(path, SdpaData::from_problem(p).to_sdpa_string()).map_err(Error::from)
}
