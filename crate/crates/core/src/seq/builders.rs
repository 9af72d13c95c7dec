//! Bundled stream families with hand-checkable structure. Each family packs
//! the streams used by the verification suites: a triangular ramp with its
//! single-block rearrangements, two-coordinate plateaus closing a gap, and
//! block or spike witnesses that separate the five distances.

use crate::rational::{rat, rat_int, Rat};

use super::{SeqModel, Tail};

/// Triangular ramp: position 1 holds 0, then block k runs 1/k, 2/k, ..., 1
/// followed by a 0, for k = 1, 2, 3, ...
#[derive(Debug, Clone)]
pub struct TriangleFamily {
    /// The plain ramp.
    pub ramp: SeqModel,
    /// The ramp with its leading 0 lifted to 1.
    pub lifted: SeqModel,
    /// rivals[n-1] rearranges block n of the lifted stream by one slot,
    /// differing from it in exactly n coordinates, each by 1/n.
    pub rivals: Vec<SeqModel>,
}

// 1-based position where block k starts; block k occupies k + 1 slots.
fn block_start(k: usize) -> usize {
    2 + (k - 1) + (k - 1) * k / 2
}

fn ramp_value(pos: usize) -> Rat {
    if pos == 1 {
        return rat_int(0);
    }
    let mut k = 1;
    while block_start(k + 1) <= pos {
        k += 1;
    }
    let t = pos - block_start(k);
    if t == k {
        rat_int(0)
    } else {
        rat((t + 1) as i64, k as i64)
    }
}

pub fn triangle_family(n_max: usize) -> TriangleFamily {
    assert!(n_max >= 1, "need at least one block");
    let len = block_start(n_max) + n_max;
    let tail = Tail::Named { id: "ramp".into(), offset: len };
    let ramp = SeqModel::new((1..=len).map(ramp_value).collect(), tail.clone());
    let lifted = ramp.with_value(1, rat_int(1)).expect("position 1 is explicit");
    let rivals = (1..=n_max)
        .map(|n| {
            let mut prefix = lifted.prefix().to_vec();
            let start = block_start(n);
            // Shift the rising run one slot to the right: the block becomes
            // 0, 1/n, ..., (n-1)/n, 0.
            for t in 0..=n {
                prefix[start + t - 1] = if t == 0 || t == n {
                    rat_int(0)
                } else {
                    rat(t as i64, n as i64)
                };
            }
            SeqModel::new(prefix, tail.clone())
        })
        .collect();
    TriangleFamily { ramp, lifted, rivals }
}

/// Two-coordinate plateaus climbing toward (1/2, 1/2, 0, 0, ...), with the
/// single-coordinate crossover stream and the constant half floor.
#[derive(Debug, Clone)]
pub struct GapFamily {
    /// (1/2, 1/2, 0, ...): the stream the members approach.
    pub limit: SeqModel,
    /// members[n-1] holds 1/2 - 2^-n in its first two coordinates.
    pub members: Vec<SeqModel>,
    /// (1/2, 0, ...): touches the half exactly once.
    pub crossover: SeqModel,
    /// The constant stream at one half.
    pub half_floor: SeqModel,
}

pub fn vanishing_gap_family(n_max: usize) -> GapFamily {
    assert!((1..=62).contains(&n_max), "gap exponent must fit a 64-bit shift");
    let half = rat(1, 2);
    let limit = SeqModel::new(vec![half.clone(), half.clone()], Tail::Zero);
    let members = (1..=n_max)
        .map(|n| {
            let level = &half - rat(1, 1i64 << n);
            SeqModel::new(vec![level.clone(), level], Tail::Zero)
        })
        .collect();
    let crossover = SeqModel::new(vec![half.clone()], Tail::Zero);
    let half_floor = SeqModel::constant(half);
    GapFamily { limit, members, crossover, half_floor }
}

/// Mirror of the gap family below zero: plateaus rising toward the origin
/// against a single deep dip.
#[derive(Debug, Clone)]
pub struct NegativeGapFamily {
    /// members[n-1] holds -2^-n in its first two coordinates.
    pub members: Vec<SeqModel>,
    /// (0, -1, 0, ...): one coordinate far below.
    pub middle: SeqModel,
    /// The zero stream.
    pub origin: SeqModel,
}

pub fn negative_gap_family(n_max: usize) -> NegativeGapFamily {
    assert!((1..=62).contains(&n_max), "gap exponent must fit a 64-bit shift");
    let members = (1..=n_max)
        .map(|n| {
            let dip = rat(-1, 1i64 << n);
            SeqModel::new(vec![dip.clone(), dip], Tail::Zero)
        })
        .collect();
    let middle = SeqModel::new(vec![rat_int(0), rat_int(-1)], Tail::Zero);
    let origin = SeqModel::zeros();
    NegativeGapFamily { members, middle, origin }
}

/// n coordinates at 1/n: thin wide mass whose total never shrinks.
pub fn uniform_block(n: usize) -> SeqModel {
    assert!(n >= 1, "block needs at least one coordinate");
    SeqModel::new(vec![rat(1, n as i64); n], Tail::Zero)
}

/// A single unit at position n: fixed mass pushed ever later.
pub fn far_spike(n: usize) -> SeqModel {
    assert!(n >= 1, "spike position is 1-based");
    let mut prefix = vec![rat_int(0); n];
    prefix[n - 1] = rat_int(1);
    SeqModel::new(prefix, Tail::Zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_starts_are_cumulative() {
        assert_eq!(block_start(1), 2);
        assert_eq!(block_start(2), 4);
        assert_eq!(block_start(3), 7);
        assert_eq!(block_start(4), 11);
    }

    #[test]
    fn every_block_ends_in_a_zero() {
        for k in 1..=6usize {
            assert_eq!(ramp_value(block_start(k) + k), rat_int(0));
            assert_eq!(ramp_value(block_start(k) + k - 1), rat_int(1));
        }
    }

    #[test]
    fn rivals_share_the_ramp_multiset() {
        let fam = triangle_family(5);
        for rival in &fam.rivals {
            let mut a = fam.ramp.prefix().to_vec();
            let mut b = rival.prefix().to_vec();
            a.sort();
            b.sort();
            assert_eq!(a, b, "a rival is a rearrangement of the plain ramp");
        }
    }
}
