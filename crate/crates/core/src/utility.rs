//! Utility families attached to a finite preorder: indicator multi-utilities,
//! the default contour-counting representation, and semicontinuity tests.

use crate::preorder::{FinitePreorder, OrderError};
use crate::rational::{rat_int, Rat};
use crate::topology::FiniteTopology;
use num::BigInt;

/// One indicator per element: u_z(w) = 1 iff z is below w. The family
/// represents the preorder exactly: x below y iff every member weakly
/// increases from x to y.
pub fn multi_utility(p: &FinitePreorder) -> Vec<Vec<Rat>> {
    let n = p.n();
    (0..n)
        .map(|z| (0..n).map(|w| rat_int(i64::from(p.le(z, w)))).collect())
        .collect()
}

/// Rebuilds the relation from any utility family by pointwise comparison.
pub fn reconstruct_from_utilities(
    n: usize,
    family: &[Vec<Rat>],
) -> Result<FinitePreorder, OrderError> {
    for u in family {
        if u.len() != n {
            return Err(OrderError::CarrierMismatch { left: u.len(), right: n });
        }
    }
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if family.iter().all(|u| u[x] <= u[y]) {
                pairs.push((x, y));
            }
        }
    }
    FinitePreorder::from_pairs(n, &pairs)
}

/// Weakly order-preserving: related elements get weakly ordered values.
pub fn is_isotonic(p: &FinitePreorder, u: &[Rat]) -> Result<bool, OrderError> {
    let n = p.n();
    if u.len() != n {
        return Err(OrderError::CarrierMismatch { left: u.len(), right: n });
    }
    Ok((0..n).all(|x| (0..n).all(|y| !p.le(x, y) || u[x] <= u[y])))
}

/// Strict upper level sets {x : u(x) > a} open for every threshold. On a
/// finite carrier the distinct utility values are the only thresholds that
/// produce distinct level sets.
pub fn is_lower_semicontinuous(u: &[Rat], t: &FiniteTopology) -> Result<bool, OrderError> {
    let n = t.n();
    if u.len() != n {
        return Err(OrderError::CarrierMismatch { left: u.len(), right: n });
    }
    let mut thresholds: Vec<&Rat> = u.iter().collect();
    thresholds.sort();
    thresholds.dedup();
    for a in thresholds {
        let mut bits = 0u64;
        for (x, v) in u.iter().enumerate() {
            if v > a {
                bits |= 1 << x;
            }
        }
        if !t.is_open_bits(bits) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// u(x) = (1 + |L(x)|) / (n + 2): isotonic, takes values strictly inside the
/// unit interval, and separates strictly comparable elements.
pub fn default_weak_utility(p: &FinitePreorder) -> Vec<Rat> {
    let n = p.n();
    let denom = BigInt::from(n as i64 + 2);
    (0..n)
        .map(|x| {
            let count = p.lower_contour(x).len() as i64;
            Rat::new(BigInt::from(1 + count), denom.clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn reconstruction_rejects_wrong_lengths() {
        let fam = vec![vec![rat(1, 2)]];
        assert!(reconstruct_from_utilities(2, &fam).is_err());
    }

    #[test]
    fn empty_family_reconstructs_total_indifference() {
        let p = reconstruct_from_utilities(3, &[]).unwrap();
        assert_eq!(p, FinitePreorder::indifference(3));
    }
}
