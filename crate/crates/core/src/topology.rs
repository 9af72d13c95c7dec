//! Finite topologies on {0, .., n-1} with every open stored explicitly.
//!
//! Generation from a subbasis goes through minimal basic opens: m(x) is the
//! intersection of the subbasis members containing x, and the opens are
//! exactly the distinct unions of the m(x). Carriers are capped at 16 for
//! anything that enumerates subsets.

use crate::preorder::{full_mask, ElementSet, FinitePreorder, MAX_ENUMERABLE_CARRIER};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TopologyError {
    #[error("carrier size {n} exceeds the maximum {max} for open-set enumeration")]
    CarrierTooLarge { n: usize, max: usize },
    #[error("carrier size mismatch: {left} vs {right}")]
    CarrierMismatch { left: usize, right: usize },
    #[error("family lacks the empty set or the full carrier")]
    MissingBoundary,
    #[error("family not closed under union: {a:?} | {b:?} missing")]
    UnionMissing { a: Vec<usize>, b: Vec<usize> },
    #[error("family not closed under intersection: {a:?} & {b:?} missing")]
    IntersectionMissing { a: Vec<usize>, b: Vec<usize> },
}

/// Invariant: `opens` is sorted, deduplicated, contains 0 and the full mask,
/// and is closed under pairwise union and intersection.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    n: usize,
    opens: Vec<u64>,
}

impl FiniteTopology {
    /// Validates that the family is literally a topology.
    pub fn from_open_sets(n: usize, sets: &[ElementSet]) -> Result<Self, TopologyError> {
        let mask = full_mask(n);
        let family: BTreeSet<u64> = sets.iter().map(|s| s.bits() & mask).collect();
        if !family.contains(&0) || !family.contains(&mask) {
            return Err(TopologyError::MissingBoundary);
        }
        let list: Vec<u64> = family.iter().copied().collect();
        for (i, &a) in list.iter().enumerate() {
            for &b in &list[i + 1..] {
                if !family.contains(&(a | b)) {
                    return Err(TopologyError::UnionMissing {
                        a: bits_to_indices(n, a),
                        b: bits_to_indices(n, b),
                    });
                }
                if !family.contains(&(a & b)) {
                    return Err(TopologyError::IntersectionMissing {
                        a: bits_to_indices(n, a),
                        b: bits_to_indices(n, b),
                    });
                }
            }
        }
        Ok(FiniteTopology { n, opens: list })
    }

    /// Smallest topology containing the given sets.
    pub fn from_subbasis(n: usize, sets: &[ElementSet]) -> Result<Self, TopologyError> {
        if n > MAX_ENUMERABLE_CARRIER {
            return Err(TopologyError::CarrierTooLarge { n, max: MAX_ENUMERABLE_CARRIER });
        }
        let mask = full_mask(n);
        // Minimal basic open at x: intersect every subbasis member holding x.
        let minimal: Vec<u64> = (0..n)
            .map(|x| {
                sets.iter()
                    .map(|s| s.bits() & mask)
                    .filter(|s| s >> x & 1 == 1)
                    .fold(mask, |acc, s| acc & s)
            })
            .collect();
        // Opens are exactly the unions of minimal basic opens.
        let mut unions = vec![0u64; 1 << n];
        for subset in 1usize..1 << n {
            let low = subset.trailing_zeros() as usize;
            unions[subset] = unions[subset & (subset - 1)] | minimal[low];
        }
        let family: BTreeSet<u64> = unions.iter().copied().collect();
        Ok(FiniteTopology { n, opens: family.into_iter().collect() })
    }

    pub fn discrete(n: usize) -> Result<Self, TopologyError> {
        if n > MAX_ENUMERABLE_CARRIER {
            return Err(TopologyError::CarrierTooLarge { n, max: MAX_ENUMERABLE_CARRIER });
        }
        Ok(FiniteTopology { n, opens: (0..=full_mask(n)).collect() })
    }

    pub fn indiscrete(n: usize) -> Self {
        let mask = full_mask(n);
        let opens = if mask == 0 { vec![0] } else { vec![0, mask] };
        FiniteTopology { n, opens }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn open_count(&self) -> usize {
        self.opens.len()
    }

    pub fn opens(&self) -> Vec<ElementSet> {
        self.opens.iter().map(|&b| ElementSet::from_bits(self.n, b)).collect()
    }

    pub fn opens_bits(&self) -> &[u64] {
        &self.opens
    }

    pub fn is_open(&self, set: &ElementSet) -> bool {
        self.is_open_bits(set.bits())
    }

    pub(crate) fn is_open_bits(&self, bits: u64) -> bool {
        self.opens.binary_search(&bits).is_ok()
    }

    /// True iff every open of `other` is open here.
    pub fn finer_than(&self, other: &Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        other.opens.iter().all(|&o| self.is_open_bits(o))
    }

    /// Coarsest topology refining both.
    pub fn join(&self, other: &Self) -> Result<Self, TopologyError> {
        if self.n != other.n {
            return Err(TopologyError::CarrierMismatch { left: self.n, right: other.n });
        }
        let sets: Vec<ElementSet> = self.opens().into_iter().chain(other.opens()).collect();
        FiniteTopology::from_subbasis(self.n, &sets)
    }

    /// x below y iff every open containing x contains y; rows are the
    /// minimal opens, which finite intersection-closure makes well defined.
    pub fn specialization_preorder(&self) -> FinitePreorder {
        let mask = full_mask(self.n);
        let rows: Vec<u64> = (0..self.n)
            .map(|x| {
                self.opens
                    .iter()
                    .filter(|&&o| o >> x & 1 == 1)
                    .fold(mask, |acc, &o| acc & o)
            })
            .collect();
        FinitePreorder::from_rows_closing(self.n, rows)
    }
}

impl std::fmt::Debug for FiniteTopology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sets: Vec<Vec<usize>> = self.opens.iter().map(|&b| bits_to_indices(self.n, b)).collect();
        write!(f, "FiniteTopology(n={}, opens={sets:?})", self.n)
    }
}

fn bits_to_indices(n: usize, bits: u64) -> Vec<usize> {
    (0..n).filter(|&i| bits >> i & 1 == 1).collect()
}

/// Topology generated by complements of lower contours.
pub fn upper_topology(p: &FinitePreorder) -> Result<FiniteTopology, TopologyError> {
    let n = p.n();
    let subbasis: Vec<ElementSet> = (0..n).map(|x| p.lower_contour(x).complement()).collect();
    FiniteTopology::from_subbasis(n, &subbasis)
}

/// Topology generated by complements of upper contours.
pub fn lower_topology(p: &FinitePreorder) -> Result<FiniteTopology, TopologyError> {
    upper_topology(&p.dual())
}

/// All up-sets of the preorder.
pub fn alexandroff_topology(p: &FinitePreorder) -> Result<FiniteTopology, TopologyError> {
    let n = p.n();
    if n > MAX_ENUMERABLE_CARRIER {
        return Err(TopologyError::CarrierTooLarge { n, max: MAX_ENUMERABLE_CARRIER });
    }
    let opens: Vec<u64> = (0..=full_mask(n)).filter(|&s| p.is_up_set(s)).collect();
    Ok(FiniteTopology { n, opens })
}

/// Every lower contour is closed (its complement is open).
pub fn is_lower_continuous(p: &FinitePreorder, t: &FiniteTopology) -> bool {
    debug_assert_eq!(p.n(), t.n());
    (0..p.n()).all(|x| t.is_open_bits(p.lower_contour(x).complement().bits()))
}

/// Every upper contour is closed.
pub fn is_upper_continuous(p: &FinitePreorder, t: &FiniteTopology) -> bool {
    debug_assert_eq!(p.n(), t.n());
    (0..p.n()).all(|x| t.is_open_bits(p.upper_contour(x).complement().bits()))
}

/// Both contour families closed.
pub fn is_continuous(p: &FinitePreorder, t: &FiniteTopology) -> bool {
    is_lower_continuous(p, t) && is_upper_continuous(p, t)
}

/// Two sides of a characterization, evaluated independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Biconditional {
    pub lhs: bool,
    pub rhs: bool,
}

impl Biconditional {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Contour-closedness vs refinement of the join of the two order topologies.
pub fn continuity_iff_join_refinement(
    p: &FinitePreorder,
    t: &FiniteTopology,
) -> Result<Biconditional, TopologyError> {
    if p.n() != t.n() {
        return Err(TopologyError::CarrierMismatch { left: p.n(), right: t.n() });
    }
    let join = upper_topology(p)?.join(&lower_topology(p)?)?;
    Ok(Biconditional { lhs: is_continuous(p, t), rhs: t.finer_than(&join) })
}

/// Lower-contour closedness vs refinement of the upper topology.
pub fn lower_continuity_iff_upper_refinement(
    p: &FinitePreorder,
    t: &FiniteTopology,
) -> Result<Biconditional, TopologyError> {
    if p.n() != t.n() {
        return Err(TopologyError::CarrierMismatch { left: p.n(), right: t.n() });
    }
    Ok(Biconditional { lhs: is_lower_continuous(p, t), rhs: t.finer_than(&upper_topology(p)?) })
}

/// Relation containment vs reversed containment of up-set topologies.
pub fn refinement_iff_alexandroff_inclusion(
    p: &FinitePreorder,
    q: &FinitePreorder,
) -> Result<Biconditional, TopologyError> {
    if p.n() != q.n() {
        return Err(TopologyError::CarrierMismatch { left: p.n(), right: q.n() });
    }
    let lhs = p.refines(q);
    let rhs = alexandroff_topology(q)?.finer_than(&alexandroff_topology(p)?);
    Ok(Biconditional { lhs, rhs })
}

/// All topologies on {0, .., n-1}; the label counts are 1, 1, 4, 29, 355.
/// Families are subsets of the power set, so n is capped at 4.
pub fn enumerate_topologies(n: usize) -> Result<Vec<FiniteTopology>, TopologyError> {
    const MAX: usize = 4;
    if n > MAX {
        return Err(TopologyError::CarrierTooLarge { n, max: MAX });
    }
    let subsets = 1usize << n;
    let full = (subsets - 1) as u64;
    let mut out = Vec::new();
    'family: for code in 0u64..1 << subsets {
        if code & 1 == 0 || code >> full & 1 == 0 {
            continue;
        }
        let members: Vec<u64> = (0..subsets as u64).filter(|&s| code >> s & 1 == 1).collect();
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                if code >> (a | b) & 1 == 0 || code >> (a & b) & 1 == 0 {
                    continue 'family;
                }
            }
        }
        out.push(FiniteTopology { n, opens: members });
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct TopologyWire {
    n: usize,
    opens: Vec<Vec<usize>>,
}

impl Serialize for FiniteTopology {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut opens: Vec<Vec<usize>> =
            self.opens.iter().map(|&b| bits_to_indices(self.n, b)).collect();
        opens.sort();
        TopologyWire { n: self.n, opens }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteTopology {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = TopologyWire::deserialize(d)?;
        let sets: Result<Vec<ElementSet>, _> = wire
            .opens
            .iter()
            .map(|idx| ElementSet::from_indices(wire.n, idx))
            .collect();
        let sets = sets.map_err(D::Error::custom)?;
        FiniteTopology::from_open_sets(wire.n, &sets).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_basic_opens_generate_the_expected_family() {
        // Subbasis {0,1} and {1,2} on three points: m(0)={0,1}, m(1)={1},
        // m(2)={1,2}; opens are all unions of these plus the boundary sets.
        let sets = [
            ElementSet::from_indices(3, &[0, 1]).unwrap(),
            ElementSet::from_indices(3, &[1, 2]).unwrap(),
        ];
        let t = FiniteTopology::from_subbasis(3, &sets).unwrap();
        let expected: Vec<u64> = vec![0b000, 0b010, 0b011, 0b110, 0b111];
        assert_eq!(t.opens_bits(), expected.as_slice());
    }

    #[test]
    fn empty_carrier_is_fine() {
        let t = FiniteTopology::from_subbasis(0, &[]).unwrap();
        assert_eq!(t.open_count(), 1);
        let p = t.specialization_preorder();
        assert_eq!(p.n(), 0);
    }

    #[test]
    fn join_carrier_mismatch_errors() {
        let a = FiniteTopology::indiscrete(2);
        let b = FiniteTopology::indiscrete(3);
        assert!(matches!(a.join(&b), Err(TopologyError::CarrierMismatch { .. })));
    }
}
