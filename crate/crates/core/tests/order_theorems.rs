//! Characterization theorems checked as biconditionals, exhaustively on
//! small carriers. Both sides of each biconditional are computed through
//! unrelated code paths (contour scans vs generated-topology refinement).

use ordtopia_core::preorder::{enumerate_preorders, FinitePreorder};
use ordtopia_core::topology::{
    alexandroff_topology, continuity_iff_join_refinement, enumerate_topologies, is_continuous,
    is_lower_continuous, lower_continuity_iff_upper_refinement, refinement_iff_alexandroff_inclusion,
    upper_topology,
};
use ordtopia_core::utility::{
    default_weak_utility, is_isotonic, is_lower_semicontinuous, multi_utility,
    reconstruct_from_utilities,
};
use ordtopia_core::rational::{rat, rat_int};

#[test]
fn continuity_characterizations_hold_exhaustively_on_three_points() {
    let preorders = enumerate_preorders(3).unwrap();
    let topologies = enumerate_topologies(3).unwrap();
    assert_eq!((preorders.len(), topologies.len()), (29, 29));
    for p in &preorders {
        for t in &topologies {
            let c1 = continuity_iff_join_refinement(p, t).unwrap();
            assert!(
                c1.holds(),
                "continuity biconditional failed: p={p:?}, lhs={} rhs={}",
                c1.lhs,
                c1.rhs
            );
            let c2 = lower_continuity_iff_upper_refinement(p, t).unwrap();
            assert!(c2.holds(), "lower-continuity biconditional failed: p={p:?}");
        }
    }
}

#[test]
fn continuity_sides_are_not_vacuous() {
    // Chain with its own upper topology: lower-continuous but not continuous.
    let chain = FinitePreorder::chain(2);
    let upper = upper_topology(&chain).unwrap();
    assert!(is_lower_continuous(&chain, &upper));
    assert!(!is_continuous(&chain, &upper));
    let c2 = lower_continuity_iff_upper_refinement(&chain, &upper).unwrap();
    assert!(c2.lhs && c2.rhs);
    let c1 = continuity_iff_join_refinement(&chain, &upper).unwrap();
    assert!(!c1.lhs && !c1.rhs);
    // Alexandroff of the chain is continuous for the chain? Both contours
    // must be closed; L(x) is a down-set, so its complement is open in tau_A,
    // but U(0) is the whole carrier whose complement is empty: check directly.
    let alex = alexandroff_topology(&chain).unwrap();
    assert!(is_lower_continuous(&chain, &alex));
    assert!(!is_continuous(&chain, &alex), "upper contours are not closed in tau_A");
}

#[test]
fn alexandroff_inclusion_reverses_refinement_exhaustively() {
    let preorders = enumerate_preorders(3).unwrap();
    for p in &preorders {
        for q in &preorders {
            let bi = refinement_iff_alexandroff_inclusion(p, q).unwrap();
            assert!(bi.holds(), "p={p:?} q={q:?} lhs={} rhs={}", bi.lhs, bi.rhs);
        }
    }
}

#[test]
fn alexandroff_inclusion_hand_instance() {
    // The chain refines the identity relation; opens must shrink.
    let chain = FinitePreorder::chain(3);
    let discrete = FinitePreorder::discrete(3);
    assert!(chain.refines(&discrete));
    let a_chain = alexandroff_topology(&chain).unwrap();
    let a_disc = alexandroff_topology(&discrete).unwrap();
    assert!(a_disc.finer_than(&a_chain));
    assert!(!a_chain.finer_than(&a_disc));
    let bi = refinement_iff_alexandroff_inclusion(&chain, &discrete).unwrap();
    assert!(bi.lhs && bi.rhs);
}

#[test]
fn indicator_family_reconstructs_every_preorder_up_to_four_points() {
    for n in 0..=4usize {
        for p in enumerate_preorders(n).unwrap() {
            let fam = multi_utility(&p);
            assert_eq!(fam.len(), n);
            let back = reconstruct_from_utilities(n, &fam).unwrap();
            assert_eq!(back, p, "reconstruction must be exact, n={n}");
        }
    }
}

#[test]
fn indicator_family_on_the_chain_by_hand() {
    let chain = FinitePreorder::chain(3);
    let fam = multi_utility(&chain);
    let ones = |bits: &[i64]| -> Vec<_> { bits.iter().map(|&b| rat_int(b)).collect::<Vec<_>>() };
    assert_eq!(fam[0], ones(&[1, 1, 1]));
    assert_eq!(fam[1], ones(&[0, 1, 1]));
    assert_eq!(fam[2], ones(&[0, 0, 1]));
}

#[test]
fn indicator_utilities_are_lower_semicontinuous_and_isotonic() {
    let mut rng = ordtopia_core::sample::rng(12_000);
    for _ in 0..200 {
        let n = rand::Rng::random_range(&mut rng, 1..=5usize);
        let p = ordtopia_core::sample::random_preorder(&mut rng, n);
        let alex = alexandroff_topology(&p).unwrap();
        for u in multi_utility(&p) {
            assert!(is_isotonic(&p, &u).unwrap());
            assert!(is_lower_semicontinuous(&u, &alex).unwrap());
        }
    }
}

#[test]
fn lower_semicontinuity_negative_case() {
    // The indicator of a lower contour drops along the order: not lsc.
    let chain = FinitePreorder::chain(2);
    let alex = alexandroff_topology(&chain).unwrap();
    let down_indicator = vec![rat_int(1), rat_int(0)];
    assert!(!is_lower_semicontinuous(&down_indicator, &alex).unwrap());
    assert!(!is_isotonic(&chain, &down_indicator).unwrap());
    // Constant utilities are lsc for any topology.
    let flat = vec![rat(1, 2), rat(1, 2)];
    assert!(is_lower_semicontinuous(&flat, &alex).unwrap());
}

#[test]
fn default_weak_utility_values_and_isotonicity() {
    let chain = FinitePreorder::chain(2);
    assert_eq!(default_weak_utility(&chain), vec![rat(1, 2), rat(3, 4)]);
    let discrete = FinitePreorder::discrete(3);
    assert_eq!(
        default_weak_utility(&discrete),
        vec![rat(2, 5), rat(2, 5), rat(2, 5)]
    );
    let mut rng = ordtopia_core::sample::rng(12_001);
    for _ in 0..200 {
        let n = rand::Rng::random_range(&mut rng, 1..=6usize);
        let p = ordtopia_core::sample::random_preorder(&mut rng, n);
        let u = default_weak_utility(&p);
        assert!(is_isotonic(&p, &u).unwrap());
        for v in &u {
            assert!(*v > rat_int(0) && *v < rat_int(1), "open unit interval");
        }
        // Strictly comparable elements get strictly ordered values.
        for x in 0..n {
            for y in 0..n {
                if p.strictly_less(x, y) {
                    assert!(u[x] < u[y], "strict order must separate contour sizes");
                }
            }
        }
    }
}
