//! Infinite utility streams with a finite explicit prefix and a symbolic
//! tail, plus the comparison machinery built on them: five distances, window
//! grading, threshold counts, and gauged overtaking sums.

mod axioms;
mod builders;
mod gauge;
mod grading;
mod metrics;
mod overtaking;

pub use axioms::{check_anonymity, check_dfsc, check_pareto, check_sensitivity_present};
pub use builders::{
    far_spike, negative_gap_family, triangle_family, uniform_block, vanishing_gap_family,
    GapFamily, NegativeGapFamily, TriangleFamily,
};
pub use gauge::Gauge;
pub use grading::{
    grading_le, pre_half, pre_plus, sigma_below, sigma_below_window, ExtendedCount, SigmaMode,
};
pub use metrics::{metric_d1, metric_dc, metric_dp, metric_dq, metric_ds};
pub use overtaking::{overtaking_compare, Overtaking, PrefVerdict, TotalIndifference, WelfareCriterion};

use num::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::rational::{rat_int, serde_rat, serde_rat_vec, Rat};

#[derive(Debug, Error, PartialEq)]
pub enum SeqError {
    #[error("tails are not comparable")]
    IncomparableTails,
    #[error("window {k} is smaller than the joint prefix length {needed}")]
    WindowTooSmall { k: usize, needed: usize },
    #[error("coordinate {index} of a symbolic tail cannot be evaluated")]
    TailNotEvaluable { index: usize },
    #[error("permutation moves coordinate {support}, beyond the prefix length {prefix}")]
    SupportExceedsPrefix { support: usize, prefix: usize },
    #[error("mapping is not a bijection of 1..={k}")]
    NotABijection { k: usize },
    #[error("coordinate {index} is negative, outside the gauge domain")]
    GaugeDomain { index: usize },
    #[error("exponent {value} outside {range}")]
    InvalidExponent { value: f64, range: &'static str },
    #[error("instance malformed: {reason}")]
    BadInstance { reason: &'static str },
}

/// Tail of a stream beyond its explicit prefix.
///
/// `Named` tails are opaque: two of them line up only when the identifier
/// and the alignment offset both agree, in which case the tails are equal
/// coordinate by coordinate without being evaluable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tail {
    Zero,
    Const(Rat),
    Named { id: String, offset: usize },
}

/// A utility stream: explicit rational prefix, symbolic rest.
/// Coordinates are 1-based throughout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqModel {
    prefix: Vec<Rat>,
    tail: Tail,
}

impl SeqModel {
    pub fn new(prefix: Vec<Rat>, tail: Tail) -> Self {
        let tail = match tail {
            Tail::Const(c) if c.is_zero() => Tail::Zero,
            other => other,
        };
        SeqModel { prefix, tail }
    }

    pub fn zeros() -> Self {
        SeqModel { prefix: Vec::new(), tail: Tail::Zero }
    }

    pub fn constant(c: Rat) -> Self {
        SeqModel::new(Vec::new(), Tail::Const(c))
    }

    pub fn prefix(&self) -> &[Rat] {
        &self.prefix
    }

    pub fn tail(&self) -> &Tail {
        &self.tail
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    /// Value of the 1-based coordinate `pos`, when it is evaluable.
    pub fn value_at(&self, pos: usize) -> Option<Rat> {
        assert!(pos >= 1, "coordinates are 1-based");
        if pos <= self.prefix.len() {
            return Some(self.prefix[pos - 1].clone());
        }
        match &self.tail {
            Tail::Zero => Some(rat_int(0)),
            Tail::Const(c) => Some(c.clone()),
            Tail::Named { .. } => None,
        }
    }

    /// Whether the tails line up well enough for coordinatewise work:
    /// matching constants, or the same symbolic tail at the same alignment.
    pub fn metric_comparable(&self, other: &SeqModel) -> bool {
        match (&self.tail, &other.tail) {
            (Tail::Zero, Tail::Zero) => true,
            (Tail::Const(a), Tail::Const(b)) => a == b,
            (Tail::Named { id: a, offset: oa }, Tail::Named { id: b, offset: ob }) => {
                a == b && oa == ob && self.prefix.len() == other.prefix.len()
            }
            _ => false,
        }
    }

    /// Positions where the streams differ, with both values.
    /// Sorted by position; empty exactly when the streams are equal.
    pub fn diff_support(&self, other: &SeqModel) -> Result<Vec<(usize, Rat, Rat)>, SeqError> {
        if !self.metric_comparable(other) {
            return Err(SeqError::IncomparableTails);
        }
        let upper = self.prefix.len().max(other.prefix.len());
        let mut out = Vec::new();
        for pos in 1..=upper {
            let a = self.value_at(pos).expect("comparable models evaluate on the joint prefix");
            let b = other.value_at(pos).expect("comparable models evaluate on the joint prefix");
            if a != b {
                out.push((pos, a, b));
            }
        }
        Ok(out)
    }

    /// Pointwise comparison across every coordinate, tail included.
    pub fn coordinatewise_le(&self, other: &SeqModel) -> Result<bool, SeqError> {
        if !self.metric_comparable(other) {
            // Distinct constants still compare pointwise.
            match (&self.tail, &other.tail) {
                (Tail::Zero | Tail::Const(_), Tail::Zero | Tail::Const(_)) => {}
                _ => return Err(SeqError::IncomparableTails),
            }
        }
        let tail_value = |t: &Tail| match t {
            Tail::Zero => Some(rat_int(0)),
            Tail::Const(c) => Some(c.clone()),
            Tail::Named { .. } => None,
        };
        match (tail_value(&self.tail), tail_value(&other.tail)) {
            (Some(ca), Some(cb)) => {
                if ca > cb {
                    return Ok(false);
                }
            }
            // Identical symbolic tails agree pointwise by definition.
            (None, None) => {}
            _ => return Err(SeqError::IncomparableTails),
        }
        let upper = self.prefix.len().max(other.prefix.len());
        for pos in 1..=upper {
            let a = self.value_at(pos).ok_or(SeqError::TailNotEvaluable { index: pos })?;
            let b = other.value_at(pos).ok_or(SeqError::TailNotEvaluable { index: pos })?;
            if a > b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Extend the prefix to `len` coordinates by materializing tail values.
    pub fn pad_prefix(&self, len: usize) -> Result<SeqModel, SeqError> {
        if len <= self.prefix.len() {
            return Ok(self.clone());
        }
        let fill = match &self.tail {
            Tail::Zero => rat_int(0),
            Tail::Const(c) => c.clone(),
            Tail::Named { .. } => {
                return Err(SeqError::TailNotEvaluable { index: self.prefix.len() + 1 })
            }
        };
        let mut prefix = self.prefix.clone();
        prefix.resize(len, fill);
        Ok(SeqModel { prefix, tail: self.tail.clone() })
    }

    /// Copy of the stream with coordinate `pos` replaced, padding the prefix
    /// outward if the position lies beyond it.
    pub fn with_value(&self, pos: usize, value: Rat) -> Result<SeqModel, SeqError> {
        assert!(pos >= 1, "coordinates are 1-based");
        let mut padded = self.pad_prefix(pos)?;
        padded.prefix[pos - 1] = value;
        Ok(padded)
    }
}

/// Bijection of 1..=k acting on stream coordinates; positions beyond the
/// window are fixed. The moved positions must stay inside a stream's
/// explicit prefix for the action to be well defined.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePermutation {
    map: Vec<usize>,
}

impl FinitePermutation {
    pub fn identity(k: usize) -> Self {
        FinitePermutation { map: (1..=k).collect() }
    }

    /// `map[i]` is the image of position i + 1, values in 1..=k.
    pub fn from_mapping(map: Vec<usize>) -> Result<Self, SeqError> {
        let k = map.len();
        let mut seen = vec![false; k];
        for &image in &map {
            if image < 1 || image > k || seen[image - 1] {
                return Err(SeqError::NotABijection { k });
            }
            seen[image - 1] = true;
        }
        Ok(FinitePermutation { map })
    }

    /// Swap positions `a` and `b` inside a window of size `k`.
    pub fn transposition(k: usize, a: usize, b: usize) -> Result<Self, SeqError> {
        if a < 1 || b < 1 || a > k || b > k {
            return Err(SeqError::NotABijection { k });
        }
        let mut map: Vec<usize> = (1..=k).collect();
        map.swap(a - 1, b - 1);
        Ok(FinitePermutation { map })
    }

    pub fn window(&self) -> usize {
        self.map.len()
    }

    /// Largest moved position, 0 for the identity.
    pub fn moved_max(&self) -> usize {
        (1..=self.map.len())
            .rev()
            .find(|&i| self.map[i - 1] != i)
            .unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        self.moved_max() == 0
    }

    /// Rearranged stream: coordinate i of the result reads coordinate
    /// `map[i]` of the input.
    pub fn apply(&self, x: &SeqModel) -> Result<SeqModel, SeqError> {
        let moved = self.moved_max();
        if moved > x.prefix_len() {
            return Err(SeqError::SupportExceedsPrefix { support: moved, prefix: x.prefix_len() });
        }
        let len = x.prefix_len();
        let prefix = (1..=len)
            .map(|i| {
                let j = if i <= self.map.len() { self.map[i - 1] } else { i };
                // A moved position maps to another moved position, so j
                // stays within the prefix.
                x.prefix[j - 1].clone()
            })
            .collect();
        Ok(SeqModel { prefix, tail: x.tail.clone() })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum TailWire {
    Zero,
    Const {
        #[serde(with = "serde_rat")]
        value: Rat,
    },
    Named { id: String, offset: usize },
}

#[derive(Serialize, Deserialize)]
struct SeqWire {
    #[serde(with = "serde_rat_vec")]
    prefix: Vec<Rat>,
    tail: TailWire,
}

impl Serialize for SeqModel {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let tail = match &self.tail {
            Tail::Zero => TailWire::Zero,
            Tail::Const(c) => TailWire::Const { value: c.clone() },
            Tail::Named { id, offset } => TailWire::Named { id: id.clone(), offset: *offset },
        };
        SeqWire { prefix: self.prefix.clone(), tail }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SeqModel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = SeqWire::deserialize(deserializer)?;
        let tail = match wire.tail {
            TailWire::Zero => Tail::Zero,
            TailWire::Const { value } => Tail::Const(value),
            TailWire::Named { id, offset } => {
                if id.is_empty() {
                    return Err(D::Error::custom("named tails need a nonempty id"));
                }
                Tail::Named { id, offset }
            }
        };
        Ok(SeqModel::new(wire.prefix, tail))
    }
}
