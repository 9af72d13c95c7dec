//! Finite preorders over carriers {0, .., n-1}, stored as bitset rows.
//!
//! A `FinitePreorder` always holds the reflexive-transitive closure of the
//! pairs it was built from; the strict part, the induced equivalence and
//! incomparability are derived views. Carriers are capped at 64 so one `u64`
//! row covers the carrier.

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use thiserror::Error;

/// Hard cap: one u64 bit row per element.
pub const MAX_CARRIER: usize = 64;
/// Cap for workloads that enumerate subsets of the carrier.
pub const MAX_ENUMERABLE_CARRIER: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("element index {index} out of range for carrier of size {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("carrier size {n} exceeds the supported maximum {max}")]
    CarrierTooLarge { n: usize, max: usize },
    #[error("carrier size mismatch: {left} vs {right}")]
    CarrierMismatch { left: usize, right: usize },
}

/// Subset of a carrier {0, .., n-1} as a bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElementSet {
    n: usize,
    bits: u64,
}

impl ElementSet {
    pub fn empty(n: usize) -> Self {
        ElementSet { n, bits: 0 }
    }

    pub fn full(n: usize) -> Self {
        ElementSet { n, bits: full_mask(n) }
    }

    /// From a raw mask; bits outside the carrier are dropped.
    pub fn from_bits(n: usize, bits: u64) -> Self {
        ElementSet { n, bits: bits & full_mask(n) }
    }

    pub fn from_indices(n: usize, indices: &[usize]) -> Result<Self, OrderError> {
        let mut bits = 0u64;
        for &i in indices {
            if i >= n {
                return Err(OrderError::IndexOutOfRange { index: i, n });
            }
            bits |= 1 << i;
        }
        Ok(ElementSet { n, bits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.n && self.bits >> i & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn complement(&self) -> Self {
        ElementSet { n: self.n, bits: !self.bits & full_mask(self.n) }
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        ElementSet { n: self.n, bits: self.bits | other.bits }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        ElementSet { n: self.n, bits: self.bits & other.bits }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|&i| self.bits >> i & 1 == 1)
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 0 {
        0
    } else if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Reflexive, transitive relation on {0, .., n-1}.
///
/// Invariant: `rows` is always reflexively and transitively closed;
/// `rows[i]` has bit j set iff i precedes-or-equals j.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinitePreorder {
    n: usize,
    rows: Vec<u64>,
}

impl FinitePreorder {
    /// Reflexive-transitive closure of the given related pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, OrderError> {
        if n > MAX_CARRIER {
            return Err(OrderError::CarrierTooLarge { n, max: MAX_CARRIER });
        }
        let mut rows = vec![0u64; n];
        for (i, row) in rows.iter_mut().enumerate() {
            *row = 1 << i;
        }
        for &(i, j) in pairs {
            if i >= n {
                return Err(OrderError::IndexOutOfRange { index: i, n });
            }
            if j >= n {
                return Err(OrderError::IndexOutOfRange { index: j, n });
            }
            rows[i] |= 1 << j;
        }
        close_transitively(&mut rows);
        Ok(FinitePreorder { n, rows })
    }

    /// Wraps rows that are already reflexively and transitively closed.
    /// Closes them again if not, so the invariant always holds.
    pub(crate) fn from_rows_closing(n: usize, mut rows: Vec<u64>) -> Self {
        debug_assert_eq!(rows.len(), n);
        let mask = full_mask(n);
        for (i, row) in rows.iter_mut().enumerate() {
            *row = (*row | 1 << i) & mask;
        }
        close_transitively(&mut rows);
        FinitePreorder { n, rows }
    }

    /// Identity relation: every element related only to itself.
    pub fn discrete(n: usize) -> Self {
        let rows = (0..n).map(|i| 1u64 << i).collect();
        FinitePreorder { n, rows }
    }

    /// Total order 0 < 1 < .. < n-1.
    pub fn chain(n: usize) -> Self {
        let mask = full_mask(n);
        let rows = (0..n).map(|i| mask & !((1u64 << i) - 1)).collect();
        FinitePreorder { n, rows }
    }

    /// Everything related to everything.
    pub fn indifference(n: usize) -> Self {
        let mask = full_mask(n);
        FinitePreorder { n, rows: vec![mask; n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// x precedes-or-equals y.
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.rows[x] >> y & 1 == 1
    }

    /// x strictly below y: x ≤ y and not y ≤ x.
    pub fn strictly_less(&self, x: usize, y: usize) -> bool {
        self.le(x, y) && !self.le(y, x)
    }

    /// Related both ways.
    pub fn equivalent(&self, x: usize, y: usize) -> bool {
        self.le(x, y) && self.le(y, x)
    }

    /// Related neither way.
    pub fn incomparable(&self, x: usize, y: usize) -> bool {
        !self.le(x, y) && !self.le(y, x)
    }

    /// L(y) = {x : x ≤ y}.
    pub fn lower_contour(&self, y: usize) -> ElementSet {
        let mut bits = 0u64;
        for x in 0..self.n {
            bits |= u64::from(self.rows[x] >> y & 1) << x;
        }
        ElementSet { n: self.n, bits }
    }

    /// U(x) = {y : x ≤ y}.
    pub fn upper_contour(&self, x: usize) -> ElementSet {
        ElementSet { n: self.n, bits: self.rows[x] }
    }

    /// Every pair comparable at least one way.
    pub fn is_total(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.le(x, y) || self.le(y, x)))
    }

    /// Antisymmetric: no two distinct elements equivalent.
    pub fn is_partial_order(&self) -> bool {
        (0..self.n).all(|x| (x + 1..self.n).all(|y| !self.equivalent(x, y)))
    }

    /// Relation with all arrows reversed.
    pub fn dual(&self) -> Self {
        let mut rows = vec![0u64; self.n];
        for x in 0..self.n {
            for y in 0..self.n {
                rows[y] |= u64::from(self.rows[x] >> y & 1) << x;
            }
        }
        FinitePreorder { n: self.n, rows }
    }

    /// True iff every pair related by `other` is related by `self`.
    pub fn refines(&self, other: &Self) -> bool {
        self.n == other.n
            && self
                .rows
                .iter()
                .zip(&other.rows)
                .all(|(mine, theirs)| theirs & !mine == 0)
    }

    /// Set is upward closed: members drag every successor in.
    pub fn is_up_set(&self, bits: u64) -> bool {
        (0..self.n).all(|i| bits >> i & 1 == 0 || self.rows[i] & !bits & full_mask(self.n) == 0)
    }

    /// Closed relation minus the diagonal, sorted. Serialization form.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if x != y && self.le(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

impl fmt::Debug for FinitePreorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinitePreorder(n={}, pairs={:?})", self.n, self.pairs())
    }
}

/// Bit-parallel Warshall pass; after it, rows are transitively closed.
fn close_transitively(rows: &mut [u64]) {
    let n = rows.len();
    for k in 0..n {
        let row_k = rows[k];
        for i in 0..n {
            if rows[i] >> k & 1 == 1 {
                rows[i] |= row_k;
            }
        }
    }
}

/// All preorders on {0, .., n-1}, by filtering off-diagonal assignments for
/// transitivity. Counts follow the labeled-topology series 1, 1, 4, 29, 355,
/// 6942; sizes past 5 are rejected.
pub fn enumerate_preorders(n: usize) -> Result<Vec<FinitePreorder>, OrderError> {
    const MAX: usize = 5;
    if n > MAX {
        return Err(OrderError::CarrierTooLarge { n, max: MAX });
    }
    if n == 0 {
        return Ok(vec![FinitePreorder { n: 0, rows: vec![] }]);
    }
    let slots = n * (n - 1);
    let mut out = Vec::new();
    'candidate: for code in 0u64..1 << slots {
        let mut rows = vec![0u64; n];
        let mut bit = 0;
        for (i, row) in rows.iter_mut().enumerate() {
            *row = 1 << i;
            for j in 0..n {
                if i != j {
                    *row |= (code >> bit & 1) << j;
                    bit += 1;
                }
            }
        }
        for i in 0..n {
            let mut reach = rows[i];
            for k in 0..n {
                if rows[i] >> k & 1 == 1 {
                    reach |= rows[k];
                }
            }
            if reach != rows[i] {
                continue 'candidate;
            }
        }
        out.push(FinitePreorder { n, rows });
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct PreorderWire {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl Serialize for FinitePreorder {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PreorderWire { n: self.n, pairs: self.pairs() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinitePreorder {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = PreorderWire::deserialize(d)?;
        FinitePreorder::from_pairs(wire.n, &wire.pairs).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_set_basics() {
        let s = ElementSet::from_indices(4, &[0, 2]).unwrap();
        assert!(s.contains(0) && !s.contains(1) && s.contains(2));
        assert_eq!(s.len(), 2);
        assert_eq!(s.complement().indices(), vec![1, 3]);
        assert_eq!(format!("{s:?}"), "{0, 2}");
        assert!(ElementSet::from_indices(2, &[5]).is_err());
    }

    #[test]
    fn up_set_detection() {
        let chain = FinitePreorder::chain(3);
        assert!(chain.is_up_set(0b100));
        assert!(chain.is_up_set(0b110));
        assert!(!chain.is_up_set(0b001));
        assert!(chain.is_up_set(0b111) && chain.is_up_set(0));
    }

    #[test]
    fn carrier_cap_enforced() {
        assert!(FinitePreorder::from_pairs(65, &[]).is_err());
        assert!(enumerate_preorders(6).is_err());
    }
}
