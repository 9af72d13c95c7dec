//! Distance tables with the symmetry axiom relaxed, and the constructions
//! that turn a finite preorder (plus a base metric or a utility) into one.
//!
//! All entries are exact rationals. Validation happens at the boundaries:
//! `from_table` scans the axioms and reports the first witness it finds, the
//! constructions check their preconditions, and `classify_table` grades an
//! arbitrary table without rejecting it.

use std::fmt;

use num::integer::Integer;
use num::{BigInt, One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::preorder::{ElementSet, FinitePreorder, MAX_CARRIER};
use crate::rational::{rat, rat_int, serde_rat_mat, Rat};
use crate::topology::{FiniteTopology, TopologyError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QpmError {
    #[error("carrier {n} exceeds the supported maximum {max}")]
    CarrierTooLarge { n: usize, max: usize },
    #[error("carrier sizes differ: {left} vs {right}")]
    CarrierMismatch { left: usize, right: usize },
    #[error("row {row} does not match the table width")]
    NotSquare { row: usize },
    #[error("negative entry at ({x}, {y})")]
    NegativeEntry { x: usize, y: usize },
    #[error("nonzero diagonal entry at {x}")]
    NonzeroDiagonal { x: usize },
    #[error("triangle inequality fails: d({x}, {z}) > d({x}, {y}) + d({y}, {z})")]
    TriangleViolation { x: usize, y: usize, z: usize },
    #[error("entries ({x}, {y}) and ({y}, {x}) differ")]
    Asymmetric { x: usize, y: usize },
    #[error("base distance at ({x}, {y}) exceeds 1")]
    NotOneBounded { x: usize, y: usize },
    #[error("parameters k = {k}, m = {m} outside 0 <= k <= m with m >= 1")]
    ParamOutOfRange { k: i64, m: i64 },
    #[error("utility is not isotonic: {x} below {y} but valued higher")]
    UtilityNotIsotonic { x: usize, y: usize },
    #[error("utility value at {x} lies outside the open unit interval")]
    UtilityOutOfRange { x: usize },
}

/// Axiom scan of an arbitrary square table. Each field holds the first
/// witness of the corresponding failure, or `None` when the axiom holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableClassification {
    pub not_square: Option<usize>,
    pub negative: Option<(usize, usize)>,
    pub nonzero_diagonal: Option<usize>,
    pub triangle: Option<(usize, usize, usize)>,
    pub asymmetric: Option<(usize, usize)>,
    /// Distinct points at zero distance in both directions.
    pub unseparated_pair: Option<(usize, usize)>,
    /// Distinct points at zero distance in at least one direction.
    pub unseparated_point: Option<(usize, usize)>,
}

impl TableClassification {
    pub fn is_qpm(&self) -> bool {
        self.not_square.is_none()
            && self.negative.is_none()
            && self.nonzero_diagonal.is_none()
            && self.triangle.is_none()
    }

    pub fn is_quasi_metric(&self) -> bool {
        self.is_qpm() && self.unseparated_pair.is_none()
    }

    pub fn is_t1_quasi_metric(&self) -> bool {
        self.is_qpm() && self.unseparated_point.is_none()
    }

    pub fn is_pseudo_metric(&self) -> bool {
        self.is_qpm() && self.asymmetric.is_none()
    }

    pub fn is_metric(&self) -> bool {
        self.is_pseudo_metric() && self.unseparated_point.is_none()
    }
}

/// Grade a table against every axiom at once, recording first witnesses.
pub fn classify_table(dist: &[Vec<Rat>]) -> TableClassification {
    let n = dist.len();
    let mut report = TableClassification {
        not_square: None,
        negative: None,
        nonzero_diagonal: None,
        triangle: None,
        asymmetric: None,
        unseparated_pair: None,
        unseparated_point: None,
    };
    for (row, values) in dist.iter().enumerate() {
        if values.len() != n {
            report.not_square = Some(row);
            return report;
        }
    }
    'negative: for x in 0..n {
        for y in 0..n {
            if dist[x][y].is_negative() {
                report.negative = Some((x, y));
                break 'negative;
            }
        }
    }
    report.nonzero_diagonal = (0..n).find(|&x| !dist[x][x].is_zero());
    report.triangle = triangle_witness(dist);
    'asymmetric: for x in 0..n {
        for y in x + 1..n {
            if dist[x][y] != dist[y][x] {
                report.asymmetric = Some((x, y));
                break 'asymmetric;
            }
        }
    }
    'pair: for x in 0..n {
        for y in x + 1..n {
            if dist[x][y].is_zero() && dist[y][x].is_zero() {
                report.unseparated_pair = Some((x, y));
                break 'pair;
            }
        }
    }
    'point: for x in 0..n {
        for y in 0..n {
            if x != y && dist[x][y].is_zero() {
                report.unseparated_point = Some((x, y));
                break 'point;
            }
        }
    }
    report
}

// Clearing denominators turns the triangle scan into integer adds; the first
// witness in (x, y, z) order is d(x, z) > d(x, y) + d(y, z).
fn triangle_witness(dist: &[Vec<Rat>]) -> Option<(usize, usize, usize)> {
    let n = dist.len();
    let mut lcm = BigInt::one();
    for row in dist {
        for v in row {
            lcm = lcm.lcm(v.denom());
        }
    }
    let scaled: Vec<Vec<BigInt>> = dist
        .iter()
        .map(|row| row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect())
        .collect();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if scaled[x][z] > &scaled[x][y] + &scaled[y][z] {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// Rational distance table satisfying the quasi-pseudo-metric axioms:
/// zero diagonal, nonnegative entries, triangle inequality. Symmetry is not
/// required; `PseudoMetric` adds it.
#[derive(Clone, PartialEq, Eq)]
pub struct QuasiPseudoMetric {
    n: usize,
    dist: Vec<Vec<Rat>>,
}

impl QuasiPseudoMetric {
    pub fn from_table(dist: Vec<Vec<Rat>>) -> Result<Self, QpmError> {
        let n = dist.len();
        if n > MAX_CARRIER {
            return Err(QpmError::CarrierTooLarge { n, max: MAX_CARRIER });
        }
        let report = classify_table(&dist);
        if let Some(row) = report.not_square {
            return Err(QpmError::NotSquare { row });
        }
        if let Some((x, y)) = report.negative {
            return Err(QpmError::NegativeEntry { x, y });
        }
        if let Some(x) = report.nonzero_diagonal {
            return Err(QpmError::NonzeroDiagonal { x });
        }
        if let Some((x, y, z)) = report.triangle {
            return Err(QpmError::TriangleViolation { x, y, z });
        }
        Ok(QuasiPseudoMetric { n, dist })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> &Rat {
        &self.dist[x][y]
    }

    pub fn table(&self) -> &[Vec<Rat>] {
        &self.dist
    }

    pub fn max_entry(&self) -> Rat {
        self.dist
            .iter()
            .flatten()
            .max()
            .cloned()
            .unwrap_or_else(|| rat_int(0))
    }

    pub fn is_one_bounded(&self) -> bool {
        self.max_entry() <= rat_int(1)
    }
}

impl fmt::Debug for QuasiPseudoMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuasiPseudoMetric({}x{})", self.n, self.n)
    }
}

/// Symmetric distance table; points at distance zero may still be distinct.
#[derive(Clone, PartialEq, Eq)]
pub struct PseudoMetric(QuasiPseudoMetric);

impl PseudoMetric {
    pub fn from_table(dist: Vec<Vec<Rat>>) -> Result<Self, QpmError> {
        let inner = QuasiPseudoMetric::from_table(dist)?;
        let report = classify_table(inner.table());
        if let Some((x, y)) = report.asymmetric {
            return Err(QpmError::Asymmetric { x, y });
        }
        Ok(PseudoMetric(inner))
    }

    pub fn inner(&self) -> &QuasiPseudoMetric {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn get(&self, x: usize, y: usize) -> &Rat {
        self.0.get(x, y)
    }

    pub fn table(&self) -> &[Vec<Rat>] {
        self.0.table()
    }

    pub fn max_entry(&self) -> Rat {
        self.0.max_entry()
    }

    /// Rescale by 1 / (1 + max entry), mapping every distance into [0, 1).
    pub fn scale_to_unit(&self) -> PseudoMetric {
        let shrink = rat_int(1) + self.max_entry();
        let dist = self
            .0
            .dist
            .iter()
            .map(|row| row.iter().map(|v| v / &shrink).collect())
            .collect();
        PseudoMetric::from_table(dist).expect("positive rescaling preserves the axioms")
    }
}

impl fmt::Debug for PseudoMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PseudoMetric({}x{})", self.0.n, self.0.n)
    }
}

/// Zero-one table of a preorder: distance 0 from x to y exactly when x is
/// below y. Its balls generate the up-set topology.
pub fn encode_preorder(p: &FinitePreorder) -> QuasiPseudoMetric {
    let n = p.n();
    let dist = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| rat_int(i64::from(!p.le(x, y))))
                .collect()
        })
        .collect();
    QuasiPseudoMetric::from_table(dist).expect("order tables satisfy the axioms")
}

/// Pointwise maximum of the two directions, the coarsest symmetric table
/// above the given one.
pub fn symmetrize(d: &QuasiPseudoMetric) -> PseudoMetric {
    let n = d.n();
    let dist = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| d.get(x, y).max(d.get(y, x)).clone())
                .collect()
        })
        .collect();
    PseudoMetric::from_table(dist).expect("pointwise maximum preserves the axioms")
}

/// Preorder whose graph is the zero set of the table. Transitivity is
/// inherited from the triangle inequality.
pub fn induced_preorder(d: &QuasiPseudoMetric) -> FinitePreorder {
    let n = d.n();
    let rows = (0..n)
        .map(|x| {
            (0..n)
                .filter(|&y| d.get(x, y).is_zero())
                .fold(0u64, |acc, y| acc | 1 << y)
        })
        .collect();
    FinitePreorder::from_rows_closing(n, rows)
}

/// Points strictly within `radius` of `center`, measured outward.
pub fn ball(d: &QuasiPseudoMetric, center: usize, radius: &Rat) -> ElementSet {
    let bits = (0..d.n())
        .filter(|&y| d.get(center, y) < radius)
        .fold(0u64, |acc, y| acc | 1 << y);
    ElementSet::from_bits(d.n(), bits)
}

/// Topology generated by the balls of the table. Every positive entry value
/// is used as a radius; the balls form a base, so generating from them as a
/// subbasis adds no further sets.
pub fn induced_topology(d: &QuasiPseudoMetric) -> Result<FiniteTopology, TopologyError> {
    let mut radii: Vec<&Rat> = d
        .table()
        .iter()
        .flatten()
        .filter(|v| !v.is_zero())
        .collect();
    radii.sort();
    radii.dedup();
    let mut subbasis = Vec::new();
    for center in 0..d.n() {
        for r in &radii {
            subbasis.push(ball(d, center, r));
        }
    }
    // An all-zero table has no radii to offer; the empty subbasis collapses
    // to the indiscrete topology, which is the right answer there.
    FiniteTopology::from_subbasis(d.n(), &subbasis)
}

fn check_same_carrier(p: &FinitePreorder, m: usize) -> Result<(), QpmError> {
    if p.n() != m {
        return Err(QpmError::CarrierMismatch { left: p.n(), right: m });
    }
    Ok(())
}

fn check_utility(p: &FinitePreorder, u: &[Rat]) -> Result<(), QpmError> {
    check_same_carrier(p, u.len())?;
    let (zero, one) = (rat_int(0), rat_int(1));
    for (x, value) in u.iter().enumerate() {
        if *value <= zero || *value >= one {
            return Err(QpmError::UtilityOutOfRange { x });
        }
    }
    for x in 0..p.n() {
        for y in 0..p.n() {
            if p.le(x, y) && u[x] > u[y] {
                return Err(QpmError::UtilityNotIsotonic { x, y });
            }
        }
    }
    Ok(())
}

/// Base distance below, constant 1 across unrelated or reversed pairs.
/// Needs the base bounded by 1, or the jump to 1 can undercut a two-step
/// path through a related pair.
pub fn construct_d1(
    p: &FinitePreorder,
    base: &PseudoMetric,
) -> Result<QuasiPseudoMetric, QpmError> {
    check_same_carrier(p, base.n())?;
    let one = rat_int(1);
    for x in 0..p.n() {
        for y in 0..p.n() {
            if base.get(x, y) > &one {
                return Err(QpmError::NotOneBounded { x, y });
            }
        }
    }
    let dist = build_table(p.n(), |x, y| {
        if p.le(x, y) {
            base.get(x, y).clone()
        } else {
            one.clone()
        }
    });
    Ok(QuasiPseudoMetric::from_table(dist).expect("bounded base keeps the triangle"))
}

/// Halved base distance below, shifted by a half elsewhere. The halving
/// absorbs any base, bounded or not.
pub fn construct_d2(
    p: &FinitePreorder,
    base: &PseudoMetric,
) -> Result<QuasiPseudoMetric, QpmError> {
    check_same_carrier(p, base.n())?;
    let half = rat(1, 2);
    let dist = build_table(p.n(), |x, y| {
        let scaled = base.get(x, y) * &half;
        if p.le(x, y) {
            scaled
        } else {
            &half + scaled
        }
    });
    Ok(QuasiPseudoMetric::from_table(dist).expect("halving absorbs any base"))
}

/// Weight k/m on the base below, jump of k/m with weight (m - k)/m on the
/// base elsewhere. Valid from k/m = 1/2 upward over one-bounded bases; the
/// produced table is validated and the first axiom violation is returned as
/// the error, witness included.
pub fn construct_d2_param(
    p: &FinitePreorder,
    base: &PseudoMetric,
    k: i64,
    m: i64,
) -> Result<QuasiPseudoMetric, QpmError> {
    check_same_carrier(p, base.n())?;
    if m < 1 || k < 0 || k > m {
        return Err(QpmError::ParamOutOfRange { k, m });
    }
    let alpha = rat(k, m);
    let rest = rat(m - k, m);
    let dist = build_table(p.n(), |x, y| {
        if p.le(x, y) {
            &alpha * base.get(x, y)
        } else {
            &alpha + &rest * base.get(x, y)
        }
    });
    QuasiPseudoMetric::from_table(dist)
}

/// Zero below, a jump past 1 sized by the utility gap above, 1 across
/// incomparable pairs. Induces exactly the up-set topology.
pub fn construct_d3(p: &FinitePreorder, u: &[Rat]) -> Result<QuasiPseudoMetric, QpmError> {
    check_utility(p, u)?;
    let one = rat_int(1);
    let dist = build_table(p.n(), |x, y| {
        if p.le(x, y) {
            rat_int(0)
        } else if p.strictly_less(y, x) {
            &one + (&u[x] - &u[y])
        } else {
            one.clone()
        }
    });
    Ok(QuasiPseudoMetric::from_table(dist).expect("isotonic utilities keep the triangle"))
}

/// Half the utility gap below, the mirrored gap shifted by a half above,
/// constant half across incomparable pairs.
pub fn construct_d4(p: &FinitePreorder, u: &[Rat]) -> Result<QuasiPseudoMetric, QpmError> {
    check_utility(p, u)?;
    let half = rat(1, 2);
    let dist = build_table(p.n(), |x, y| {
        if p.le(x, y) {
            (&u[y] - &u[x]) * &half
        } else if p.strictly_less(y, x) {
            &half + (&u[x] - &u[y]) * &half
        } else {
            half.clone()
        }
    });
    Ok(QuasiPseudoMetric::from_table(dist).expect("isotonic utilities keep the triangle"))
}

fn build_table(n: usize, entry: impl Fn(usize, usize) -> Rat) -> Vec<Vec<Rat>> {
    (0..n)
        .map(|x| {
            (0..n)
                .map(|y| if x == y { rat_int(0) } else { entry(x, y) })
                .collect()
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
struct QpmWire {
    n: usize,
    #[serde(with = "serde_rat_mat")]
    dist: Vec<Vec<Rat>>,
}

impl Serialize for QuasiPseudoMetric {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        QpmWire { n: self.n, dist: self.dist.clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuasiPseudoMetric {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = QpmWire::deserialize(deserializer)?;
        if wire.dist.len() != wire.n {
            return Err(D::Error::custom("table size does not match the carrier"));
        }
        QuasiPseudoMetric::from_table(wire.dist).map_err(D::Error::custom)
    }
}

impl Serialize for PseudoMetric {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PseudoMetric {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let inner = QuasiPseudoMetric::deserialize(deserializer)?;
        PseudoMetric::from_table(inner.dist).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetrize_of_a_reversed_pair() {
        let d = QuasiPseudoMetric::from_table(vec![
            vec![rat_int(0), rat(1, 3)],
            vec![rat_int(1), rat_int(0)],
        ])
        .unwrap();
        let s = symmetrize(&d);
        assert_eq!(s.get(0, 1), &rat_int(1));
        assert_eq!(s.get(1, 0), &rat_int(1));
    }

    #[test]
    fn ball_uses_strict_outward_distance() {
        let d = encode_preorder(&FinitePreorder::chain(2));
        // Row 0 is (0, 0): everything lies strictly within radius 1 of 0.
        assert_eq!(ball(&d, 0, &rat_int(1)).indices(), vec![0, 1]);
        // Row 1 is (1, 0): only the center itself is within 1.
        assert_eq!(ball(&d, 1, &rat_int(1)).indices(), vec![1]);
    }

    #[test]
    fn oversized_tables_are_rejected() {
        let n = MAX_CARRIER + 1;
        let dist = vec![vec![rat_int(0); n]; n];
        assert!(matches!(
            QuasiPseudoMetric::from_table(dist),
            Err(QpmError::CarrierTooLarge { .. })
        ));
    }
}
