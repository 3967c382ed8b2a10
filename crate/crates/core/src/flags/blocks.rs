use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graphs::{enumerate_triangle_free, SmallGraph};
use crate::rational::Q;

use super::expression::for_each_subset;
use super::types::RootedType;

/// Calls `visit` with every injective map `0..k -> 0..n`, in lexicographic order.
pub(crate) fn for_each_injection(n: usize, k: usize, visit: &mut dyn FnMut(&[usize])) {
    fn rec(n: usize, k: usize, used: u32, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            visit(cur);
            return;
        }
        for v in 0..n {
            if used >> v & 1 == 0 {
                cur.push(v);
                rec(n, k, used | 1 << v, cur, visit);
                cur.pop();
            }
        }
    }
    rec(n, k, 0, &mut Vec::with_capacity(k), visit);
}

pub(crate) fn falling_factorial(n: usize, k: usize) -> u64 {
    (0..k).map(|i| (n - i) as u64).product()
}

/// Checks that a basis is nonempty, shares one root and one size, and fits into
/// `n`-vertex graphs as a product. Returns `(k, size)`.
fn basis_shape(basis: &[RootedType], n: usize) -> Result<(usize, usize)> {
    let first = basis
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty flag basis".into()))?;
    let (k, size, root) = (first.k(), first.size(), first.root());
    if basis.iter().any(|t| t.k() != k || t.size() != size || t.root() != root) {
        return Err(Error::InvalidArgument(
            "basis types must share their root and size".into(),
        ));
    }
    if 2 * size - k > n {
        return Err(Error::DimensionMismatch(format!(
            "product of two {size}-vertex types with {k} roots needs {} vertices, constraint graphs have {n}",
            2 * size - k
        )));
    }
    Ok((k, size))
}

/// Matrix of `F` for a single basis: entry `(s, t)` is the probability that a uniformly
/// random injective root map and two disjoint random extension sets give types `s`
/// and `t`. Maps that do not induce the root contribute zero.
pub(crate) fn product_block(basis: &[RootedType], f: &SmallGraph) -> Result<Vec<Vec<Q>>> {
    let n = f.n();
    let (k, size) = basis_shape(basis, n)?;
    let root = basis[0].root();
    let extra = size - k;
    let dim = basis.len();
    let mut counts = vec![vec![0u64; dim]; dim];
    let mut xs: Vec<(Vec<usize>, Option<usize>)> = Vec::new();
    for_each_injection(n, k, &mut |theta| {
        if f.induced(theta) != root {
            return;
        }
        let rest: Vec<usize> = (0..n).filter(|v| !theta.contains(v)).collect();
        xs.clear();
        for_each_subset(&rest, extra, &mut |x| {
            let t = RootedType::induced(f, theta, x);
            xs.push((x.to_vec(), basis.iter().position(|b| *b == t)));
        });
        for (x, sx) in &xs {
            let Some(s) = sx else { continue };
            for (y, sy) in &xs {
                if let Some(t) = sy {
                    if x.iter().all(|v| !y.contains(v)) {
                        counts[*s][*t] += 1;
                    }
                }
            }
        }
    });
    let rest = n - k;
    let pairs = crate::rational::binomial(rest, extra) * crate::rational::binomial(rest - extra, extra);
    let total = Q::from_integer((falling_factorial(n, k) * pairs).into());
    Ok(counts
        .into_iter()
        .map(|row| row.into_iter().map(|c| Q::from_integer(c.into()) / &total).collect())
        .collect())
}

/// Product matrices `M_F` of one flag basis for every triangle-free `F` on `n`
/// vertices, in the order of [`enumerate_triangle_free`].
pub fn product_block_matrices(basis: &[RootedType], n: usize) -> Result<Vec<Vec<Vec<Q>>>> {
    basis_shape(basis, n)?;
    blocks_for(basis, &enumerate_triangle_free(n)?)
}

pub(crate) fn blocks_for(basis: &[RootedType], graphs: &[SmallGraph]) -> Result<Vec<Vec<Vec<Q>>>> {
    graphs.par_iter().map(|f| product_block(basis, f)).collect()
}

/// `<a, b>` for symmetric matrices of equal shape.
pub(crate) fn frobenius(a: &[Vec<Q>], b: &[Vec<Q>]) -> Q {
    let mut sum = Q::zero();
    for (ra, rb) in a.iter().zip(b) {
        for (x, y) in ra.iter().zip(rb) {
            if !x.is_zero() && !y.is_zero() {
                sum += x * y;
            }
        }
    }
    sum
}
