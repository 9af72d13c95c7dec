//! Closure and contour oracles: every derived relation is recomputed here by
//! a route independent of the library (per-node BFS reachability, row/column
//! scans over the raw pair list) and compared against the constructors.

use ordtopia_core::preorder::{enumerate_preorders, FinitePreorder};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Reachability closure by BFS from each node over the raw pair list,
/// plus the diagonal. Independent of the library's bit-parallel closure.
fn closure_oracle(n: usize, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![]; n];
    for &(i, j) in pairs {
        adj[i].push(j);
    }
    let mut rel = vec![vec![false; n]; n];
    for start in 0..n {
        let mut queue = vec![start];
        rel[start][start] = true;
        while let Some(v) = queue.pop() {
            for &w in &adj[v] {
                if !rel[start][w] {
                    rel[start][w] = true;
                    queue.push(w);
                }
            }
        }
    }
    rel
}

fn assert_matches_oracle(n: usize, pairs: &[(usize, usize)]) {
    let p = FinitePreorder::from_pairs(n, pairs).unwrap();
    let oracle = closure_oracle(n, pairs);
    for x in 0..n {
        for y in 0..n {
            assert_eq!(
                p.le(x, y),
                oracle[x][y],
                "closure mismatch at ({x},{y}) for n={n}, pairs={pairs:?}"
            );
        }
    }
}

#[test]
fn closure_adds_transitive_edge() {
    let p = FinitePreorder::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
    assert!(p.le(0, 2), "0 must reach 2 through 1");
    assert!(p.le(0, 0) && p.le(1, 1) && p.le(2, 2));
    assert!(!p.le(2, 0) && !p.le(1, 0) && !p.le(2, 1));
}

#[test]
fn two_cycle_collapses_to_equivalence() {
    let p = FinitePreorder::from_pairs(2, &[(0, 1), (1, 0)]).unwrap();
    assert!(p.equivalent(0, 1));
    assert!(!p.strictly_less(0, 1) && !p.strictly_less(1, 0));
    assert!(!p.incomparable(0, 1));
}

#[test]
fn closure_matches_bfs_oracle_on_random_pair_sets() {
    let mut rng: ChaCha8Rng = ordtopia_core::sample::rng(02025);
    for _ in 0..500 {
        let n = rng.random_range(1..=8usize);
        let k = rng.random_range(0..=n * n);
        let pairs: Vec<(usize, usize)> = (0..k)
            .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
            .collect();
        assert_matches_oracle(n, &pairs);
    }
}

#[test]
fn contours_match_pairwise_scans() {
    let mut rng: ChaCha8Rng = ordtopia_core::sample::rng(7_0001);
    for _ in 0..200 {
        let n = rng.random_range(1..=7usize);
        let k = rng.random_range(0..=n * 2);
        let pairs: Vec<(usize, usize)> = (0..k)
            .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
            .collect();
        let p = FinitePreorder::from_pairs(n, &pairs).unwrap();
        for y in 0..n {
            let lower = p.lower_contour(y);
            let upper = p.upper_contour(y);
            for x in 0..n {
                assert_eq!(lower.contains(x), p.le(x, y), "L({y}) at {x}");
                assert_eq!(upper.contains(x), p.le(y, x), "U({y}) at {x}");
            }
        }
    }
}

#[test]
fn derived_relations_partition_every_pair() {
    let mut rng: ChaCha8Rng = ordtopia_core::sample::rng(31);
    for _ in 0..200 {
        let n = rng.random_range(1..=6usize);
        let p = ordtopia_core::sample::random_preorder(&mut rng, n);
        for x in 0..n {
            for y in 0..n {
                let cats = [
                    p.strictly_less(x, y),
                    p.strictly_less(y, x),
                    p.equivalent(x, y),
                    p.incomparable(x, y),
                ];
                assert_eq!(
                    cats.iter().filter(|&&b| b).count(),
                    1,
                    "exactly one of <, >, ~, incomparable must hold at ({x},{y})"
                );
            }
        }
    }
}

#[test]
fn dual_swaps_contours() {
    let p = FinitePreorder::from_pairs(4, &[(0, 1), (1, 2), (3, 1)]).unwrap();
    let d = p.dual();
    for x in 0..4 {
        for y in 0..4 {
            assert_eq!(p.le(x, y), d.le(y, x));
        }
        assert_eq!(p.lower_contour(x), d.upper_contour(x));
    }
    let dd = d.dual();
    assert_eq!(p, dd);
}

#[test]
fn refines_is_a_partial_order_on_three_element_preorders() {
    let all = enumerate_preorders(3).unwrap();
    assert_eq!(all.len(), 29, "preorders on three labeled points");
    for p in &all {
        assert!(p.refines(p), "reflexive");
    }
    for p in &all {
        for q in &all {
            if p.refines(q) && q.refines(p) {
                assert_eq!(p, q, "antisymmetric");
            }
            for r in &all {
                if p.refines(q) && q.refines(r) {
                    assert!(p.refines(r), "transitive");
                }
            }
        }
    }
}

#[test]
fn preorder_counts_match_the_known_series() {
    // Labeled preorders are in bijection with finite topologies: 1, 4, 29, 355.
    assert_eq!(enumerate_preorders(1).unwrap().len(), 1);
    assert_eq!(enumerate_preorders(2).unwrap().len(), 4);
    assert_eq!(enumerate_preorders(3).unwrap().len(), 29);
    assert_eq!(enumerate_preorders(4).unwrap().len(), 355);
}

#[test]
fn chain_and_discrete_shapes() {
    let chain = FinitePreorder::chain(3);
    assert!(chain.le(0, 2) && chain.strictly_less(0, 1) && chain.is_total());
    let discrete = FinitePreorder::discrete(3);
    for x in 0..3 {
        for y in 0..3 {
            assert_eq!(discrete.le(x, y), x == y);
        }
    }
    assert!(!discrete.is_total());
    assert!(discrete.is_partial_order() && chain.is_partial_order());
    let indiff = FinitePreorder::indifference(2);
    assert!(indiff.equivalent(0, 1) && !indiff.is_partial_order());
}

#[test]
fn json_round_trip_lists_closed_nonreflexive_pairs() {
    let p = FinitePreorder::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
    let json = serde_json::to_string(&p).unwrap();
    assert_eq!(json, r#"{"n":3,"pairs":[[0,1],[0,2],[1,2]]}"#);
    let back: FinitePreorder = serde_json::from_str(&json).unwrap();
    assert_eq!(p, back);
}

#[test]
fn out_of_range_pairs_are_rejected() {
    assert!(FinitePreorder::from_pairs(2, &[(0, 2)]).is_err());
    assert!(FinitePreorder::from_pairs(0, &[]).is_ok());
}
