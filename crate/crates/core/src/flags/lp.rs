use minilp::{ComparisonOp, OptimizationDirection, Problem};

use crate::error::{Error, Result};
use crate::rational::to_f64;

use super::certificate::{rationalize_certificate, Certificate};
use super::sdp::SdpProblem;

/// Largest denominator kept when rounding a floating solution.
pub const MAX_CERTIFICATE_DENOMINATOR: u64 = 1_000_000;

/// Solves the problem with all blocks fixed at zero, which leaves a linear program
/// in `λ` and `mu`, then rounds the solution to an exact certificate.
pub fn lp_certificate(p: &SdpProblem) -> Result<Certificate> {
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let lambda = lp.add_var(1.0, (f64::NEG_INFINITY, f64::INFINITY));
    let mu: Vec<_> = p.cuts.iter().map(|_| lp.add_var(0.0, (0.0, f64::INFINITY))).collect();
    for f in 0..p.constraint_graphs.len() {
        let mut row: Vec<_> = mu.iter().zip(&p.cut_rows).map(|(&v, r)| (v, to_f64(&r[f]))).collect();
        row.push((lambda, -2.0));
        lp.add_constraint(&row[..], ComparisonOp::Le, 0.0);
    }
    let ones: Vec<_> = mu.iter().map(|&v| (v, 1.0)).collect();
    lp.add_constraint(&ones[..], ComparisonOp::Eq, 1.0);
    let solution = lp
        .solve()
        .map_err(|e| Error::Infeasible(format!("linear program: {e}")))?;
    let values: Vec<f64> = mu.iter().map(|&v| solution[v]).collect();
    let zero_blocks: Vec<Vec<Vec<f64>>> = p.block_sizes().iter().map(|&d| vec![vec![0.0; d]; d]).collect();
    rationalize_certificate(p, &values, &zero_blocks, MAX_CERTIFICATE_DENOMINATOR)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::{single_vertex_cut, uniform_random_cut};
    use crate::flags::{assemble_sdp, c5_limit_value, verify_certificate, Verdict};
    use crate::rational::q;

    #[test]
    fn single_cut_optimum() {
        let p = assemble_sdp(4, &[single_vertex_cut()], &[]).unwrap();
        let c = lp_certificate(&p).unwrap();
        assert_eq!(c.lambda, q(1, 6));
        assert_eq!(verify_certificate(&c, &p).unwrap(), Verdict::Certified { lambda: q(1, 6) });
        let p = assemble_sdp(4, &[uniform_random_cut()], &[]).unwrap();
        assert_eq!(lp_certificate(&p).unwrap().lambda, q(1, 6));
    }

    #[test]
    fn mixing_cuts_helps() {
        // the single-vertex row peaks on 2K2, the uniform row on C4
        let p = assemble_sdp(4, &[single_vertex_cut(), uniform_random_cut()], &[]).unwrap();
        let c = lp_certificate(&p).unwrap();
        assert!(c.lambda < q(1, 6));
        assert!(matches!(verify_certificate(&c, &p).unwrap(), Verdict::Certified { .. }));
        assert!(c5_limit_value(&p, &c).unwrap() <= q(2, 1) * &c.lambda);
        assert!(c.lambda >= q(1, 25));
    }
}
