//! Seeded random generators for suites and property tests. ChaCha8 keeps
//! streams identical across platforms, so reports are reproducible.

use crate::preorder::FinitePreorder;
use crate::qpm::PseudoMetric;
use crate::rational::{rat_int, Rat};
use crate::seq::{SeqModel, Tail};
use crate::topology::FiniteTopology;
use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Closure of a random pair set; density varies with the pair budget.
pub fn random_preorder(rng: &mut ChaCha8Rng, n: usize) -> FinitePreorder {
    if n == 0 {
        return FinitePreorder::discrete(0);
    }
    let budget = rng.random_range(0..=n * n / 2 + 1);
    let pairs: Vec<(usize, usize)> = (0..budget)
        .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
        .collect();
    FinitePreorder::from_pairs(n, &pairs).expect("indices are in range")
}

/// Saturation of a random subbasis.
pub fn random_topology(rng: &mut ChaCha8Rng, n: usize) -> FiniteTopology {
    let full = crate::preorder::full_mask(n);
    let count = rng.random_range(0..=2 * n.max(1));
    let sets: Vec<crate::preorder::ElementSet> = (0..count)
        .map(|_| crate::preorder::ElementSet::from_bits(n, rng.random_range(0..=full)))
        .collect();
    FiniteTopology::from_subbasis(n, &sets).expect("carrier within enumeration cap")
}

/// Symmetric table with zero diagonal and the triangle inequality, built as
/// the max-distance of random points on a rational grid. Entries lie in
/// [0, 1]; with `distinct` the points (hence off-diagonal entries) are kept
/// apart so the table is a metric.
pub fn random_pseudo_metric(rng: &mut ChaCha8Rng, n: usize, distinct: bool) -> PseudoMetric {
    const GRID: i64 = 32;
    let mut points: Vec<(i64, i64)> = Vec::with_capacity(n);
    while points.len() < n {
        let candidate = (rng.random_range(0..=GRID), rng.random_range(0..=GRID));
        if distinct && points.contains(&candidate) {
            continue;
        }
        points.push(candidate);
    }
    let dist: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let dx = (points[i].0 - points[j].0).abs();
                    let dy = (points[i].1 - points[j].1).abs();
                    Rat::new(BigInt::from(dx.max(dy)), BigInt::from(GRID))
                })
                .collect()
        })
        .collect();
    PseudoMetric::from_table(dist).expect("grid max-distance satisfies the axioms")
}

/// Same construction scaled past 1, for exercising boundedness rejections.
pub fn random_unbounded_metric(rng: &mut ChaCha8Rng, n: usize) -> PseudoMetric {
    let base = random_pseudo_metric(rng, n, true);
    let scaled: Vec<Vec<Rat>> = base
        .table()
        .iter()
        .map(|row| row.iter().map(|d| d * rat_int(5)).collect())
        .collect();
    PseudoMetric::from_table(scaled).expect("scaling preserves the axioms")
}

/// Isotonic utility into (0, 1): a positively weighted contour count.
/// With all weights equal it reduces to the default representation.
pub fn random_isotonic_utility(rng: &mut ChaCha8Rng, p: &FinitePreorder) -> Vec<Rat> {
    let n = p.n();
    let weights: Vec<i64> = (0..n).map(|_| rng.random_range(1..=8)).collect();
    let total: i64 = weights.iter().sum::<i64>() + 2;
    (0..n)
        .map(|x| {
            let sum: i64 = p.lower_contour(x).iter().map(|z| weights[z]).sum();
            Rat::new(BigInt::from(1 + sum), BigInt::from(total))
        })
        .collect()
}

/// Zero-tailed model with nonnegative rational coordinates on a small grid.
pub fn random_seq(rng: &mut ChaCha8Rng, max_len: usize, denom: i64) -> SeqModel {
    let len = rng.random_range(0..=max_len);
    let prefix: Vec<Rat> = (0..len)
        .map(|_| Rat::new(BigInt::from(rng.random_range(0..=2 * denom)), BigInt::from(denom)))
        .collect();
    SeqModel::new(prefix, Tail::Zero)
}

/// Random permutation supported inside 1..=k.
pub fn random_permutation(rng: &mut ChaCha8Rng, k: usize) -> crate::seq::FinitePermutation {
    let mut map: Vec<usize> = (1..=k).collect();
    for i in (1..k).rev() {
        let j = rng.random_range(0..=i);
        map.swap(i, j);
    }
    crate::seq::FinitePermutation::from_mapping(map).expect("shuffle of identity is a bijection")
}
