use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::{q, Q};

fn check_domain(n: u64, m: u64) -> Result<()> {
    if m > n * n / 4 {
        return Err(Error::Domain(format!(
            "{m} edges exceed the triangle-free maximum {} on {n} vertices",
            n * n / 4
        )));
    }
    if n * n == 2 * m {
        return Err(Error::Singular(format!("n² = 2m at n = {n}, m = {m}")));
    }
    Ok(())
}

/// Both branches of the bound of Erdős, Faudree, Pach and Spencer for triangle-free
/// graphs with `n` vertices and `m` edges, as exact rationals.
pub fn efps_branches(n: u64, m: u64) -> Result<(Q, Q)> {
    check_domain(n, m)?;
    let (n, m) = (n as i128, m as i128);
    let n2 = n * n;
    let first = q(m as i64, 2) - Q::new((2 * m * (2 * m * m - n2 * n)).into(), (n2 * (n2 - 2 * m)).into());
    let second = Q::new((m * n2 - 4 * m * m).into(), n2.into());
    Ok((first, second))
}

/// `min{ m/2 - 2m(2m² - n³)/(n²(n² - 2m)), m - 4m²/n² }`.
pub fn efps_bound(n: u64, m: u64) -> Result<Q> {
    let (a, b) = efps_branches(n, m)?;
    Ok(a.min(b))
}

/// Whether `efps_bound(n, m) <= n²/18`, by integer cross-multiplication.
pub fn efps_within_n2_over_18(n: u64, m: u64) -> Result<bool> {
    check_domain(n, m)?;
    let (n, m) = (n as i128, m as i128);
    let (n2, n4) = (n * n, n * n * n * n);
    // n² - 2m > 0 on the domain, so multiplying through keeps the direction
    let slack = n2 - 2 * m;
    let first = 9 * m * n2 * slack - 36 * m * (2 * m * m - n2 * n) <= n4 * slack;
    let second = 18 * (m * n2 - 4 * m * m) <= n4;
    Ok(first || second)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridReport {
    pub checked: u64,
    pub violations: u64,
    /// Violating pair with the largest `efps_bound / n²`, if any.
    pub worst: Option<(u64, u64)>,
}

/// Checks `efps_bound(n, m) <= n²/18` for every `n` in `lo..=hi` and
/// `1 <= m <= ⌊n²/4⌋`.
pub fn efps_grid(lo: u64, hi: u64) -> GridReport {
    let per_n: Vec<(u64, u64, Option<(u64, u64)>)> = (lo.max(1)..=hi)
        .into_par_iter()
        .map(|n| {
            let (mut checked, mut violations) = (0u64, 0u64);
            let mut worst: Option<(u64, u64)> = None;
            for m in 1..=n * n / 4 {
                if n * n == 2 * m {
                    continue;
                }
                checked += 1;
                if !efps_within_n2_over_18(n, m).expect("inside the domain") {
                    violations += 1;
                    let better = match worst {
                        None => true,
                        Some((_, wm)) => efps_bound(n, m).unwrap() > efps_bound(n, wm).unwrap(),
                    };
                    if better {
                        worst = Some((n, m));
                    }
                }
            }
            (checked, violations, worst)
        })
        .collect();
    let ratio = |(n, m): (u64, u64)| efps_bound(n, m).unwrap() / Q::from_integer(((n * n) as i64).into());
    let worst = per_n
        .iter()
        .filter_map(|r| r.2)
        .fold(None, |best: Option<(u64, u64)>, cand| match best {
            Some(b) if ratio(b) >= ratio(cand) => Some(b),
            _ => Some(cand),
        });
    GridReport {
        checked: per_n.iter().map(|r| r.0).sum(),
        violations: per_n.iter().map(|r| r.1).sum(),
        worst,
    }
}
