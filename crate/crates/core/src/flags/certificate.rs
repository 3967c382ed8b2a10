use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::to_graph6;
use crate::rational::{format_q, qi, rationalize, Q};

use super::sdp::SdpProblem;

/// Multipliers over the cuts of a problem, one PSD matrix per flag basis, and the
/// bound `λ` they certify.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(with = "crate::rational::serde_q")]
    pub lambda: Q,
    #[serde(with = "crate::rational::serde_q::vec")]
    pub mu: Vec<Q>,
    pub blocks: Vec<Block>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Block(#[serde(with = "crate::rational::serde_q::matrix")] pub Vec<Vec<Q>>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    NegativeMultiplier { cut: usize, value: Q },
    MultiplierSum { sum: Q },
    NotSymmetric { block: usize },
    NotPsd { block: usize },
    Violated { graph: String, lhs: Q, rhs: Q },
}

impl std::fmt::Display for Rejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Rejection::NegativeMultiplier { cut, value } => {
                write!(f, "multiplier of cut {cut} is negative ({})", format_q(value))
            }
            Rejection::MultiplierSum { sum } => write!(f, "multipliers sum to {}, not 1", format_q(sum)),
            Rejection::NotSymmetric { block } => write!(f, "block {block} is not symmetric"),
            Rejection::NotPsd { block } => write!(f, "block {block} is not positive semidefinite"),
            Rejection::Violated { graph, lhs, rhs } => write!(
                f,
                "constraint graph {graph} violated: {} > {}",
                format_q(lhs),
                format_q(rhs)
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `D₂ <= λn² + o(n²)` over triangle-free graphs.
    Certified { lambda: Q },
    Rejected(Rejection),
}

/// Exact PSD test: fraction-free symmetric elimination on the integer matrix obtained
/// by clearing denominators. A zero pivot must come with an all-zero residual row.
pub fn is_psd(m: &[Vec<Q>]) -> bool {
    let n = m.len();
    let scale = m
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|x| x.numer() * (&scale / x.denom())).collect())
        .collect();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut prev = BigInt::one();
    while let Some(&r) = remaining.first() {
        remaining.remove(0);
        let pivot = a[r][r].clone();
        if pivot.is_negative() {
            return false;
        }
        if pivot.is_zero() {
            if remaining.iter().any(|&j| !a[r][j].is_zero()) {
                return false;
            }
            continue;
        }
        for &i in &remaining {
            for &j in &remaining {
                let v = (&pivot * &a[i][j] - &a[i][r] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = pivot;
    }
    true
}

fn is_symmetric(m: &[Vec<Q>]) -> bool {
    m.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, x)| *x == m[j][i]))
}

fn check_shapes(c: &Certificate, p: &SdpProblem) -> Result<()> {
    if c.mu.len() != p.cuts.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} multipliers for {} cuts",
            c.mu.len(),
            p.cuts.len()
        )));
    }
    let sizes = p.block_sizes();
    if c.blocks.len() != sizes.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} blocks for {} bases",
            c.blocks.len(),
            sizes.len()
        )));
    }
    for (j, (b, &d)) in c.blocks.iter().zip(&sizes).enumerate() {
        if b.0.len() != d || b.0.iter().any(|row| row.len() != d) {
            return Err(Error::DimensionMismatch(format!("block {j} is not {d}x{d}")));
        }
    }
    Ok(())
}

pub fn verify_certificate(c: &Certificate, p: &SdpProblem) -> Result<Verdict> {
    check_shapes(c, p)?;
    if let Some((cut, value)) = c.mu.iter().enumerate().find(|(_, m)| m.is_negative()) {
        return Ok(Verdict::Rejected(Rejection::NegativeMultiplier { cut, value: value.clone() }));
    }
    let sum = c.mu.iter().fold(Q::zero(), |acc, m| acc + m);
    if !sum.is_one() {
        return Ok(Verdict::Rejected(Rejection::MultiplierSum { sum }));
    }
    let block_faults: Vec<Option<Rejection>> = c
        .blocks
        .par_iter()
        .enumerate()
        .map(|(block, b)| {
            if !is_symmetric(&b.0) {
                Some(Rejection::NotSymmetric { block })
            } else if !is_psd(&b.0) {
                Some(Rejection::NotPsd { block })
            } else {
                None
            }
        })
        .collect();
    if let Some(fault) = block_faults.into_iter().flatten().next() {
        return Ok(Verdict::Rejected(fault));
    }
    let rhs = qi(2) * &c.lambda;
    let blocks: Vec<Vec<Vec<Q>>> = c.blocks.iter().map(|b| b.0.clone()).collect();
    let violation = (0..p.constraint_graphs.len())
        .into_par_iter()
        .map(|f| (f, p.row_value(f, &c.mu, &blocks)))
        .find_first(|(_, lhs)| *lhs > rhs);
    Ok(match violation {
        Some((f, lhs)) => Verdict::Rejected(Rejection::Violated {
            graph: to_graph6(&p.constraint_graphs[f]),
            lhs,
            rhs,
        }),
        None => Verdict::Certified { lambda: c.lambda.clone() },
    })
}

/// Rounds a floating solution to rationals with denominators at most `max_den`,
/// rescales the multipliers to sum to exactly 1 and sets `λ` to half the largest row.
/// The result still has to pass [`verify_certificate`]: rounding can break PSD.
pub fn rationalize_certificate(
    p: &SdpProblem,
    mu: &[f64],
    blocks: &[Vec<Vec<f64>>],
    max_den: u64,
) -> Result<Certificate> {
    if mu.len() != p.cuts.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} multipliers for {} cuts",
            mu.len(),
            p.cuts.len()
        )));
    }
    let mut mu: Vec<Q> = mu.iter().map(|&x| rationalize(x.max(0.0), max_den)).collect();
    let sum = mu.iter().fold(Q::zero(), |acc, m| acc + m);
    if sum.is_zero() {
        return Err(Error::Infeasible("all multipliers round to zero".into()));
    }
    for m in &mut mu {
        *m = &*m / &sum;
    }
    let blocks: Vec<Block> = blocks
        .iter()
        .map(|b| {
            Block(
                (0..b.len())
                    .map(|i| {
                        (0..b.len())
                            .map(|j| rationalize((b[i][j] + b[j][i]) / 2.0, max_den))
                            .collect()
                    })
                    .collect(),
            )
        })
        .collect();
    let mut c = Certificate {
        lambda: Q::zero(),
        mu,
        blocks,
    };
    check_shapes(&c, p)?;
    let raw: Vec<Vec<Vec<Q>>> = c.blocks.iter().map(|b| b.0.clone()).collect();
    let max_row = (0..p.constraint_graphs.len())
        .map(|f| p.row_value(f, &c.mu, &raw))
        .max()
        .unwrap_or_else(Q::zero);
    c.lambda = max_row / qi(2);
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::uniform_random_cut;
    use crate::flags::assemble_sdp;
    use crate::rational::{q, to_f64};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect()
    }

    #[test]
    fn small_psd_cases() {
        assert!(is_psd(&[]));
        assert!(is_psd(&m(&[&[0]])));
        assert!(!is_psd(&m(&[&[-1]])));
        assert!(is_psd(&m(&[&[1, 1], &[1, 1]])));
        assert!(!is_psd(&m(&[&[1, 2], &[2, 1]])));
        assert!(!is_psd(&m(&[&[0, 1], &[1, 0]])));
        assert!(!is_psd(&m(&[&[0, 1], &[1, 5]])));
        assert!(is_psd(&m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]])));
        assert!(is_psd(&m(&[&[1, 0, 1], &[0, 0, 0], &[1, 0, 1]])));
        let tiny = vec![vec![q(1, 3), q(1, 3)], vec![q(1, 3), q(1, 3) - q(1, 1_000_000_000)]];
        assert!(!is_psd(&tiny));
    }

    fn random_symmetric(rng: &mut ChaCha8Rng) -> Vec<Vec<Q>> {
        let n = rng.gen_range(1..=8);
        let rank = rng.gen_range(0..=n);
        let b: Vec<Vec<Q>> = (0..n)
            .map(|_| (0..rank).map(|_| q(rng.gen_range(-6..=6), rng.gen_range(1..=4))).collect())
            .collect();
        let mut a = vec![vec![Q::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                for l in 0..rank {
                    a[i][j] += &b[i][l] * &b[j][l];
                }
            }
        }
        // every other matrix gets a symmetric perturbation that may break PSD
        if rng.gen_bool(0.5) {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            let d = q(rng.gen_range(-3..=3), rng.gen_range(1..=5));
            a[i][j] += &d;
            if i != j {
                a[j][i] += d;
            }
        }
        a
    }

    #[test]
    fn agrees_with_eigenvalues() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (mut psd, mut checked) = (0, 0);
        for _ in 0..100 {
            let a = random_symmetric(&mut rng);
            let n = a.len();
            let f = nalgebra::DMatrix::from_fn(n, n, |i, j| to_f64(&a[i][j]));
            let min = f.symmetric_eigenvalues().min();
            if min.abs() <= 1e-9 * (1.0 + f.norm()) {
                continue;
            }
            checked += 1;
            assert_eq!(is_psd(&a), min > 0.0, "{a:?} has minimum eigenvalue {min}");
            psd += usize::from(min > 0.0);
        }
        assert!(checked > 30 && psd > 5 && checked - psd > 5, "{checked} {psd}");
    }

    proptest! {
        #[test]
        fn gram_matrices_are_psd(entries in proptest::collection::vec(-5i64..=5, 1..=24), n in 1usize..=6) {
            let cols = entries.len().div_ceil(n).max(1);
            let b = |i: usize, l: usize| qi(*entries.get(i * cols + l).unwrap_or(&0));
            let a: Vec<Vec<Q>> = (0..n)
                .map(|i| (0..n).map(|j| (0..cols).map(|l| b(i, l) * b(j, l)).sum()).collect())
                .collect();
            prop_assert!(is_psd(&a));
        }
    }

    #[test]
    fn trivial_certificate() {
        let p = assemble_sdp(4, &[uniform_random_cut()], &[]).unwrap();
        let mut c = Certificate {
            lambda: q(1, 4),
            mu: vec![qi(1)],
            blocks: vec![],
        };
        assert_eq!(verify_certificate(&c, &p).unwrap(), Verdict::Certified { lambda: q(1, 4) });
        c.lambda = q(1, 6);
        assert!(matches!(verify_certificate(&c, &p).unwrap(), Verdict::Certified { .. }));
        c.lambda = q(1, 6) - q(1, 1000);
        match verify_certificate(&c, &p).unwrap() {
            Verdict::Rejected(Rejection::Violated { graph, lhs, .. }) => {
                assert_eq!(crate::graphs::from_graph6(&graph).unwrap().edge_count(), 4);
                assert_eq!(lhs, q(1, 3));
            }
            other => panic!("{other:?}"),
        }
        c.lambda = q(1, 4);
        c.mu = vec![q(1, 2)];
        assert!(matches!(
            verify_certificate(&c, &p).unwrap(),
            Verdict::Rejected(Rejection::MultiplierSum { .. })
        ));
        c.mu = vec![qi(1), qi(0)];
        assert!(verify_certificate(&c, &p).is_err());
    }

    #[test]
    fn rationalized_solution_verifies() {
        let p = assemble_sdp(4, &[uniform_random_cut(), crate::cuts::single_vertex_cut()], &[]).unwrap();
        let c = rationalize_certificate(&p, &[0.333333333, 0.666666667], &[], 1_000_000).unwrap();
        assert_eq!(c.mu, vec![q(1, 3), q(2, 3)]);
        assert!(matches!(verify_certificate(&c, &p).unwrap(), Verdict::Certified { .. }));
        let text = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<Certificate>(&text).unwrap(), c);
        assert!(rationalize_certificate(&p, &[0.0, -1.0], &[], 1_000_000).is_err());
    }
}
