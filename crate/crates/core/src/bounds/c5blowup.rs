use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{blow_up, cycle, d2_exact, BlowUpSpec, MAX_D2_VERTICES};
use crate::rational::Q;

/// Class sizes `a1..a5` of a blow-up of `C5`; class `i` is joined to classes `i±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct C5BlowUpProfile {
    pub sizes: [u64; 5],
}

impl C5BlowUpProfile {
    pub fn new(sizes: [u64; 5]) -> Self {
        C5BlowUpProfile { sizes }
    }

    pub fn balanced(t: u64) -> Self {
        C5BlowUpProfile { sizes: [t; 5] }
    }

    pub fn total(&self) -> u64 {
        self.sizes.iter().sum()
    }

    pub fn edges(&self) -> u64 {
        (0..5).map(|i| self.sizes[i] * self.sizes[(i + 1) % 5]).sum()
    }

    /// Removing the lightest pair of adjacent classes leaves a path of classes.
    pub fn d2_formula(&self) -> u64 {
        (0..5).map(|i| self.sizes[i] * self.sizes[(i + 1) % 5]).min().unwrap()
    }

    pub fn is_symmetric(&self) -> bool {
        self.sizes[1] == self.sizes[4] && self.sizes[2] == self.sizes[3]
    }

    pub fn rotated(&self, by: usize) -> Self {
        let mut sizes = [0; 5];
        for (i, s) in sizes.iter_mut().enumerate() {
            *s = self.sizes[(i + by) % 5];
        }
        C5BlowUpProfile { sizes }
    }
}

/// `D₂` of the blow-up. Within brute-force capacity the formula is checked against
/// [`d2_exact`] and a disagreement is an error; beyond it the formula is returned
/// only when `formula_only` is set.
pub fn c5_blowup_d2(profile: &C5BlowUpProfile, formula_only: bool) -> Result<u64> {
    let formula = profile.d2_formula();
    if profile.total() > MAX_D2_VERTICES as u64 {
        return if formula_only {
            Ok(formula)
        } else {
            Err(Error::Capacity(format!(
                "{} vertices exceed the brute-force limit {MAX_D2_VERTICES}",
                profile.total()
            )))
        };
    }
    let sizes = profile.sizes.iter().map(|&s| s as usize).collect();
    let g = blow_up(&BlowUpSpec::new(cycle(5), sizes))?;
    let exact = d2_exact(&g)?.removed as u64;
    if exact != formula {
        return Err(Error::Invariant(format!(
            "profile {:?}: formula {formula}, brute force {exact}",
            profile.sizes
        )));
    }
    Ok(exact)
}

fn compositions(total: u64, symmetric: bool) -> Vec<C5BlowUpProfile> {
    let mut out = Vec::new();
    if symmetric {
        for b in 0..=total / 2 {
            for c in 0..=(total - 2 * b) / 2 {
                out.push(C5BlowUpProfile::new([total - 2 * b - 2 * c, b, c, c, b]));
            }
        }
    } else {
        for a in 0..=total {
            for b in 0..=total - a {
                for c in 0..=total - a - b {
                    for d in 0..=total - a - b - c {
                        out.push(C5BlowUpProfile::new([a, b, c, d, total - a - b - c - d]));
                    }
                }
            }
        }
    }
    out
}

pub const MAX_OPTIMUM_TOTAL: u64 = 200;

/// Maximizes the edge count over profiles of the given total whose `D₂` is at least
/// `d2_floor` (and that are symmetric, if asked). Ties go to the lexicographically
/// smallest profile.
pub fn c5_blowup_edge_optimum(total: u64, d2_floor: &Q, symmetric: bool) -> Result<(C5BlowUpProfile, u64)> {
    if total > MAX_OPTIMUM_TOTAL {
        return Err(Error::Capacity(format!("exhaustive search is limited to {MAX_OPTIMUM_TOTAL} vertices")));
    }
    if *d2_floor < Q::from_integer(0.into()) {
        return Err(Error::InvalidArgument("negative D2 floor".into()));
    }
    let candidates = compositions(total, symmetric);
    candidates
        .par_iter()
        .filter(|p| Q::from_integer((p.d2_formula() as i64).into()) >= *d2_floor)
        .map(|p| (p.edges(), std::cmp::Reverse(*p)))
        .max()
        .map(|(e, p)| (p.0, e))
        .ok_or_else(|| {
            Error::Infeasible(format!(
                "no {}profile on {total} vertices reaches D2 >= {}",
                if symmetric { "symmetric " } else { "" },
                crate::rational::format_q(d2_floor)
            ))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    #[test]
    fn formula_matches_brute_force_up_to_12() {
        for total in 0..=12u64 {
            for p in compositions(total, false) {
                c5_blowup_d2(&p, false).unwrap();
            }
        }
    }

    #[test]
    fn examples() {
        for t in 1..=3 {
            assert_eq!(c5_blowup_d2(&C5BlowUpProfile::balanced(t), false).unwrap(), t * t);
        }
        assert_eq!(c5_blowup_d2(&C5BlowUpProfile::new([1, 2, 3, 2, 1]), false).unwrap(), 1);
        assert_eq!(c5_blowup_d2(&C5BlowUpProfile::new([0, 4, 4, 4, 4]), false).unwrap(), 0);
        let big = C5BlowUpProfile::balanced(5);
        assert!(matches!(c5_blowup_d2(&big, false), Err(Error::Capacity(_))));
        assert_eq!(c5_blowup_d2(&big, true).unwrap(), 25);
    }

    #[test]
    fn balanced_is_optimal_at_the_floor() {
        for t in 1..=8 {
            let (p, e) = c5_blowup_edge_optimum(5 * t, &qi((t * t) as i64), true).unwrap();
            assert_eq!(e, 5 * t * t);
            assert_eq!(C5BlowUpProfile::balanced(t).edges(), e);
            assert!(p.is_symmetric() && p.d2_formula() >= t * t);
        }
        let (p, e) = c5_blowup_edge_optimum(10, &qi(4), false).unwrap();
        assert_eq!((p, e), (C5BlowUpProfile::balanced(2), 20));
    }

    #[test]
    fn vacuous_floor_and_rotation() {
        // without a floor the best is a complete bipartite graph inside the blow-up
        let (p, e) = c5_blowup_edge_optimum(10, &qi(0), false).unwrap();
        assert_eq!(e, 25);
        for by in 0..5 {
            let r = p.rotated(by);
            assert_eq!((r.edges(), r.d2_formula()), (e, p.d2_formula()));
        }
        assert!(matches!(c5_blowup_edge_optimum(10, &qi(5), true), Err(Error::Infeasible(_))));
        assert!(c5_blowup_edge_optimum(201, &qi(0), true).is_err());
    }
}
