//! Window grading against a brute-force permutation search, threshold
//! counts, and the gauged overtaking comparison with its axiom battery.

use itertools::Itertools;
use ordtopia_core::rational::{rat, rat_int, Rat};
use ordtopia_core::sample;
use ordtopia_core::seq::{
    check_anonymity, check_dfsc, check_pareto, check_sensitivity_present, grading_le,
    negative_gap_family, overtaking_compare, pre_half, pre_plus, sigma_below,
    sigma_below_window, triangle_family, vanishing_gap_family, ExtendedCount, FinitePermutation,
    Gauge, Overtaking, SeqError, SeqModel, SigmaMode, Tail, TotalIndifference, WelfareCriterion,
};
use rand::Rng;

fn seqm(values: &[i64]) -> SeqModel {
    SeqModel::new(values.iter().map(|&v| rat_int(v)).collect(), Tail::Zero)
}

/// Search all window permutations directly; `None` when the models fall
/// outside what the search can express.
fn grading_oracle(x: &SeqModel, y: &SeqModel, window: usize) -> Option<bool> {
    let tail_const = |m: &SeqModel| match m.tail() {
        Tail::Zero => Some(rat_int(0)),
        Tail::Const(c) => Some(c.clone()),
        Tail::Named { .. } => None,
    };
    let cx = tail_const(x)?;
    let cy = tail_const(y)?;
    if window < x.prefix_len().max(y.prefix_len()) {
        return None;
    }
    let xs: Vec<Rat> = (1..=window).map(|i| x.value_at(i).unwrap()).collect();
    let ys: Vec<Rat> = (1..=window).map(|i| y.value_at(i).unwrap()).collect();
    let rearrangeable = (0..window)
        .permutations(window)
        .any(|perm| perm.iter().enumerate().all(|(i, &j)| xs[j] <= ys[i]));
    Some(rearrangeable && cx <= cy)
}

#[test]
fn window_dominance_by_hand() {
    assert!(grading_le(&seqm(&[0, 1]), &seqm(&[1, 0]), 2).unwrap());
    assert!(grading_le(&seqm(&[1, 0]), &seqm(&[1, 1]), 2).unwrap());
    assert!(!grading_le(&seqm(&[1, 1]), &seqm(&[1, 0]), 2).unwrap());
    assert!(matches!(
        grading_le(&seqm(&[1, 1, 1]), &seqm(&[1]), 2),
        Err(SeqError::WindowTooSmall { k: 2, needed: 3 })
    ));
}

#[test]
fn grading_matches_the_permutation_search() {
    let mut rng = sample::rng(40_100);
    let mut agree_true = 0usize;
    for _ in 0..1000 {
        let window = rng.random_range(1..=6usize);
        let x = sample::random_seq(&mut rng, window, 3);
        let y = sample::random_seq(&mut rng, window, 3);
        let got = grading_le(&x, &y, window).unwrap();
        let want = grading_oracle(&x, &y, window).unwrap();
        assert_eq!(got, want, "window {window}: {x:?} vs {y:?}");
        agree_true += usize::from(got);
    }
    assert!(agree_true > 50, "sampler should produce graded pairs");
}

#[test]
fn grading_is_monotone_in_the_window() {
    let mut rng = sample::rng(40_101);
    for _ in 0..300 {
        let x = sample::random_seq(&mut rng, 5, 4);
        let y = sample::random_seq(&mut rng, 5, 4);
        let base = x.prefix_len().max(y.prefix_len()).max(1);
        if grading_le(&x, &y, base).unwrap() {
            for extra in 1..=3usize {
                assert!(
                    grading_le(&x, &y, base + extra).unwrap(),
                    "verdict must survive widening: {x:?} vs {y:?}"
                );
            }
        }
    }
}

#[test]
fn constant_tails_gate_the_grading() {
    // Same window values, but the left tail settles higher.
    let x = SeqModel::new(vec![rat_int(0)], Tail::Const(rat(1, 2)));
    let y = SeqModel::new(vec![rat_int(0)], Tail::Const(rat(1, 3)));
    assert!(!grading_le(&x, &y, 4).unwrap());
    assert!(grading_le(&y, &x, 4).unwrap());
}

#[test]
fn symbolic_tails_grade_on_the_shared_prefix() {
    let fam = triangle_family(5);
    let window = fam.ramp.prefix_len();
    for rival in &fam.rivals {
        assert!(grading_le(rival, &fam.lifted, window).unwrap());
        assert!(!grading_le(&fam.lifted, rival, window).unwrap());
        // Rearrangements of the ramp grade both ways against it.
        assert!(grading_le(rival, &fam.ramp, window).unwrap());
        assert!(grading_le(&fam.ramp, rival, window).unwrap());
    }
    let other = SeqModel::new(
        vec![rat_int(0); window],
        Tail::Named { id: "other".into(), offset: window },
    );
    assert!(matches!(
        grading_le(&fam.ramp, &other, window),
        Err(SeqError::IncomparableTails)
    ));
}

#[test]
fn threshold_counts_extended_and_windowed() {
    let half = rat(1, 2);
    let spiky = seqm(&[0, 1, 0]);
    assert_eq!(sigma_below(&spiky, &half).unwrap(), ExtendedCount::Infinite);
    let ones = SeqModel::constant(rat_int(1));
    assert_eq!(sigma_below(&ones, &half).unwrap(), ExtendedCount::Finite(0));
    let mixed = SeqModel::new(vec![rat(3, 10), rat(7, 10)], Tail::Const(rat_int(1)));
    assert_eq!(sigma_below(&mixed, &half).unwrap(), ExtendedCount::Finite(1));

    let crossover = SeqModel::new(vec![half.clone()], Tail::Zero);
    assert_eq!(sigma_below_window(&crossover, &half, 8).unwrap(), 7);
    assert_eq!(sigma_below_window(&ones, &half, 8).unwrap(), 0);

    let symbolic = SeqModel::new(vec![rat_int(0)], Tail::Named { id: "w".into(), offset: 1 });
    assert!(matches!(
        sigma_below(&symbolic, &half),
        Err(SeqError::TailNotEvaluable { .. })
    ));
    assert_eq!(sigma_below_window(&symbolic, &half, 1).unwrap(), 1);
    assert!(matches!(
        sigma_below_window(&symbolic, &half, 2),
        Err(SeqError::TailNotEvaluable { .. })
    ));

    assert!(ExtendedCount::Finite(3) < ExtendedCount::Finite(5));
    assert!(ExtendedCount::Finite(5) < ExtendedCount::Infinite);
    assert!(ExtendedCount::Infinite <= ExtendedCount::Infinite);
}

#[test]
fn half_threshold_verdicts_differ_between_the_two_count_readings() {
    let fam = vanishing_gap_family(6);
    for n in 2..=6usize {
        let member = &fam.members[n - 1];
        // Windowed counting: the member has one more coordinate under a half
        // than the crossover stream, so it drops strictly below.
        assert!(pre_half(member, &fam.crossover, 8, SigmaMode::Window).unwrap());
        assert!(!pre_half(&fam.crossover, member, 8, SigmaMode::Window).unwrap());
        // Extended counting: both counts are infinite and the grading fails,
        // so the two streams end up incomparable.
        assert!(!pre_half(member, &fam.crossover, 8, SigmaMode::Extended).unwrap());
        assert!(!pre_half(&fam.crossover, member, 8, SigmaMode::Extended).unwrap());
    }
    // The crossover stream sits strictly below the constant half under both
    // readings: there the grading itself carries the verdict.
    for mode in [SigmaMode::Window, SigmaMode::Extended] {
        assert!(pre_half(&fam.crossover, &fam.half_floor, 8, mode).unwrap());
        assert!(!pre_half(&fam.half_floor, &fam.crossover, 8, mode).unwrap());
    }
}

#[test]
fn zero_threshold_verdicts_on_the_negative_family() {
    let fam = negative_gap_family(6);
    for member in &fam.members {
        for mode in [SigmaMode::Window, SigmaMode::Extended] {
            assert!(pre_plus(member, &fam.middle, 8, mode).unwrap());
            assert!(!pre_plus(&fam.middle, member, 8, mode).unwrap());
        }
    }
    for mode in [SigmaMode::Window, SigmaMode::Extended] {
        assert!(pre_plus(&fam.middle, &fam.origin, 8, mode).unwrap());
        assert!(!pre_plus(&fam.origin, &fam.middle, 8, mode).unwrap());
    }
}

#[test]
fn overtaking_signs_on_small_cases() {
    let v = overtaking_compare(&seqm(&[3]), &seqm(&[8]), Gauge::SqrtShift).unwrap();
    assert!(v.x_strictly_below());
    let v = overtaking_compare(&seqm(&[1]), &seqm(&[3]), Gauge::LogShift).unwrap();
    assert!(v.x_strictly_below());
    // Exact cancellation: sqrt(4) + sqrt(4) equals sqrt(1) + sqrt(9).
    let v = overtaking_compare(&seqm(&[3, 3]), &seqm(&[0, 8]), Gauge::SqrtShift).unwrap();
    assert!(v.equivalent());
    // The linear gauge adds the coordinates exactly.
    let v = overtaking_compare(&seqm(&[1, 2, 3]), &seqm(&[6]), Gauge::Linear).unwrap();
    assert!(v.equivalent());
    let v = overtaking_compare(&seqm(&[1, 2, 3]), &seqm(&[7]), Gauge::Linear).unwrap();
    assert!(v.x_strictly_below());
    let v = overtaking_compare(&seqm(&[2, 2, 3]), &seqm(&[6]), Gauge::Linear).unwrap();
    assert!(v.y_strictly_below());
}

#[test]
fn rearranged_streams_are_overtaking_equivalent() {
    let fam = triangle_family(6);
    for rival in &fam.rivals {
        for gauge in [Gauge::SqrtShift, Gauge::LogShift, Gauge::Linear] {
            let v = overtaking_compare(&fam.ramp, rival, gauge).unwrap();
            assert!(v.equivalent(), "rearrangement must not change the total");
        }
    }
    let mut rng = sample::rng(40_102);
    for _ in 0..100 {
        let x = sample::random_seq(&mut rng, 6, 5);
        if x.prefix_len() < 2 {
            continue;
        }
        let perm = sample::random_permutation(&mut rng, x.prefix_len());
        let y = perm.apply(&x).unwrap();
        let v = overtaking_compare(&x, &y, Gauge::SqrtShift).unwrap();
        assert!(v.equivalent());
    }
}

#[test]
fn grading_implies_the_gauged_comparison() {
    let mut rng = sample::rng(40_103);
    let mut hits = 0usize;
    for _ in 0..400 {
        let x = sample::random_seq(&mut rng, 6, 4);
        let y = sample::random_seq(&mut rng, 6, 4);
        let window = x.prefix_len().max(y.prefix_len()).max(1);
        if !grading_le(&x, &y, window).unwrap() {
            continue;
        }
        hits += 1;
        for gauge in [Gauge::SqrtShift, Gauge::LogShift, Gauge::Linear] {
            let v = overtaking_compare(&x, &y, gauge).unwrap();
            assert!(v.x_le_y, "graded pairs must stay comparable: {x:?} vs {y:?}");
        }
    }
    assert!(hits > 30, "sampler should produce graded pairs");
}

#[test]
fn permutation_plumbing() {
    let p = FinitePermutation::from_mapping(vec![2, 3, 1]).unwrap();
    assert_eq!(p.window(), 3);
    let x = seqm(&[10, 20, 30, 40]);
    let y = p.apply(&x).unwrap();
    assert_eq!(y, seqm(&[20, 30, 10, 40]));

    let id = FinitePermutation::identity(5);
    assert!(id.is_identity());
    // Identity padding beyond the moved points is harmless.
    assert_eq!(id.apply(&seqm(&[1, 2])).unwrap(), seqm(&[1, 2]));

    let swap = FinitePermutation::transposition(3, 1, 3).unwrap();
    assert!(matches!(
        swap.apply(&seqm(&[1, 2])),
        Err(SeqError::SupportExceedsPrefix { support: 3, prefix: 2 })
    ));
    assert!(matches!(
        FinitePermutation::from_mapping(vec![1, 1]),
        Err(SeqError::NotABijection { k: 2 })
    ));
}

#[test]
fn gauge_domain_is_guarded() {
    let below = SeqModel::new(vec![rat_int(-1)], Tail::Zero);
    assert!(matches!(
        overtaking_compare(&below, &SeqModel::zeros(), Gauge::SqrtShift),
        Err(SeqError::GaugeDomain { index: 1 })
    ));
}

#[test]
fn axiom_battery_on_random_instances() {
    let mut rng = sample::rng(40_104);
    let sqrt = Overtaking { gauge: Gauge::SqrtShift };
    let log = Overtaking { gauge: Gauge::LogShift };
    let linear = Overtaking { gauge: Gauge::Linear };
    let flat = TotalIndifference;
    let weights = [rat(1, 4), rat(1, 2), rat(3, 4)];

    let mut dfsc_runs = 0usize;
    for _ in 0..150 {
        let x = sample::random_seq(&mut rng, 6, 4);
        if x.prefix_len() < 2 {
            continue;
        }
        let perm = sample::random_permutation(&mut rng, x.prefix_len());
        assert!(check_anonymity(&sqrt, &x, &perm).unwrap());
        assert!(check_anonymity(&log, &x, &perm).unwrap());
        assert!(check_anonymity(&linear, &x, &perm).unwrap());

        // Lift a couple of coordinates to manufacture a dominated pair.
        let mut above = x.clone();
        for _ in 0..rng.random_range(1..=2) {
            let pos = rng.random_range(1..=x.prefix_len());
            let bumped = above.value_at(pos).unwrap() + rat_int(rng.random_range(1..=3));
            above = above.with_value(pos, bumped).unwrap();
        }
        assert!(check_pareto(&sqrt, &x, &above).unwrap());
        assert!(check_pareto(&log, &x, &above).unwrap());
        assert!(check_pareto(&linear, &x, &above).unwrap());
        assert!(!check_pareto(&flat, &x, &above).unwrap());

        if perm.apply(&x).unwrap() != x {
            dfsc_runs += 1;
            assert!(check_dfsc(&sqrt, &x, &perm, &weights).unwrap());
            assert!(check_dfsc(&log, &x, &perm, &weights).unwrap());
            // A straight sum cannot reward smoothing: the mixture lands on
            // the same total, so strict preference fails.
            assert!(!check_dfsc(&linear, &x, &perm, &weights).unwrap());
        }

        assert!(check_sensitivity_present(&sqrt, &x).unwrap());
        assert!(check_sensitivity_present(&log, &x).unwrap());
        assert!(check_sensitivity_present(&linear, &x).unwrap());
        assert!(!check_sensitivity_present(&flat, &x).unwrap());
    }
    assert!(dfsc_runs >= 50, "need enough genuinely moved permutations");
}

#[test]
fn axiom_instances_are_validated() {
    let sqrt = Overtaking { gauge: Gauge::SqrtShift };
    let x = seqm(&[1, 2]);
    // Pareto wants genuine dominance.
    assert!(matches!(
        check_pareto(&sqrt, &seqm(&[2, 1]), &seqm(&[1, 2])),
        Err(SeqError::BadInstance { .. })
    ));
    assert!(matches!(
        check_pareto(&sqrt, &x, &x),
        Err(SeqError::BadInstance { .. })
    ));
    // Smoothing wants a permutation that moves something and interior weights.
    let id = FinitePermutation::identity(2);
    assert!(matches!(
        check_dfsc(&sqrt, &x, &id, &[rat(1, 2)]),
        Err(SeqError::BadInstance { .. })
    ));
    let swap = FinitePermutation::transposition(2, 1, 2).unwrap();
    assert!(matches!(
        check_dfsc(&sqrt, &x, &swap, &[rat_int(1)]),
        Err(SeqError::BadInstance { .. })
    ));
}

#[test]
fn sensitivity_applies_to_the_empty_prefix_too() {
    let sqrt = Overtaking { gauge: Gauge::SqrtShift };
    assert!(check_sensitivity_present(&sqrt, &SeqModel::zeros()).unwrap());
}

#[test]
fn criterion_names_are_stable() {
    assert_eq!(Overtaking { gauge: Gauge::SqrtShift }.name(), "overtaking-sqrt");
    assert_eq!(Overtaking { gauge: Gauge::LogShift }.name(), "overtaking-log");
    assert_eq!(Overtaking { gauge: Gauge::Linear }.name(), "overtaking-linear");
    assert_eq!(TotalIndifference.name(), "total-indifference");
}

#[test]
fn mixed_constant_tails_grade_but_do_not_meter() {
    let x = SeqModel::constant(rat(1, 3));
    let y = SeqModel::zeros();
    // The grading settles on the tail constants.
    assert_eq!(grading_le(&x, &y, 4).unwrap(), false);
    assert_eq!(grading_le(&y, &x, 4).unwrap(), true);
    // The gauged sum would diverge across distinct tails, so it refuses.
    assert!(matches!(
        overtaking_compare(&x, &y, Gauge::Linear),
        Err(SeqError::IncomparableTails)
    ));
}
