//! Reproduction suites: rebuild each worked family, recompute its distances
//! and verdicts, and compare against the closed forms.

use crate::config::RunConfig;
use num::Zero;
use ordtopia_core::preorder::FinitePreorder;
use ordtopia_core::qpm::{induced_topology, QuasiPseudoMetric};
use ordtopia_core::rational::{format_rat, rat, rat_int, Rat};
use ordtopia_core::report::{status_of, CheckReport};
use ordtopia_core::seq::{
    check_dfsc, check_sensitivity_present, far_spike, grading_le, metric_d1, metric_dc,
    metric_dp, metric_dq, metric_ds, negative_gap_family, overtaking_compare, pre_half,
    pre_plus, triangle_family, uniform_block, vanishing_gap_family, FinitePermutation, Gauge,
    Overtaking, SeqModel, SigmaMode, Tail,
};
use ordtopia_core::topology::{
    alexandroff_topology, is_lower_continuous, lower_continuity_iff_upper_refinement,
};

const FAMILY_DEPTH: usize = 32;
const GAP_DEPTH: usize = 20;
/// Verdict rows need a window that covers every prefix they touch.
const VERDICT_WINDOW: usize = 8;

fn rel_close(observed: f64, expected: f64, tol: f64) -> bool {
    (observed - expected).abs() <= tol * expected.abs().max(1.0)
}

/// Supremum distances along the rearranged-block family: exactly 1/n, while
/// the order never lets the limit sit below any family member.
pub fn svensson_seq(_cfg: &RunConfig) -> Vec<CheckReport> {
    let suite = "svensson-seq";
    let fam = triangle_family(FAMILY_DEPTH);
    let mut rows = Vec::new();

    for (i, rival) in fam.rivals.iter().enumerate() {
        let n = i + 1;
        let want = rat(1, n as i64);
        let got = metric_ds(&fam.lifted, rival).expect("family members share a tail");
        rows.push(
            CheckReport::new(suite, format!("ds-n-{n:02}"), status_of(got == want))
                .with_anchor("SvenEx1")
                .with_observed("d_s", format_rat(&got))
                .with_expected(format!("{} exactly", format_rat(&want)))
                .with_tolerance("0"),
        );
    }

    // The limit never drops below a family member, so no tail of the family
    // enters the up-set at the limit: the order side of the convergence gap.
    let above = fam
        .rivals
        .iter()
        .filter(|r| fam.lifted.coordinatewise_le(r).expect("shared tail"))
        .count();
    rows.push(
        CheckReport::new(suite, "order-escape-limit-below-rival-count", status_of(above == 0))
            .with_anchor("SvenEx1")
            .with_observed("count", above.to_string())
            .with_expected("0"),
    );
    let below = fam
        .rivals
        .iter()
        .filter(|r| r.coordinatewise_le(&fam.lifted).expect("shared tail"))
        .count();
    rows.push(
        CheckReport::new(
            suite,
            "order-rivals-sit-weakly-below-limit",
            status_of(below == fam.rivals.len()),
        )
        .with_anchor("SvenEx1")
        .with_observed("count", below.to_string())
        .with_expected(fam.rivals.len().to_string()),
    );

    rows.extend(fragment_rows(suite));
    rows
}

/// A finite shadow of the convergence escape: truncate the family at a
/// measurement window that ends before the last block, so the deepest rival
/// becomes indistinguishable from the limit while still sitting strictly
/// below it. The up-set at the limit is then invisible to the window
/// topology, and the lower-continuity characterization fails in lockstep
/// with the refinement, keeping the biconditional intact.
fn fragment_rows(suite: &str) -> Vec<CheckReport> {
    const DEPTH: usize = 6;
    let fam = triangle_family(DEPTH);
    // block_start(DEPTH) - 1, written out: the window stops right before the
    // deepest rival's rearranged block.
    let window = 2 + (DEPTH - 1) + (DEPTH - 1) * DEPTH / 2 - 1;

    let truncate = |s: &SeqModel| {
        SeqModel::new(s.prefix()[..window].to_vec(), Tail::Zero)
    };
    let mut points = vec![truncate(&fam.lifted)];
    points.extend(fam.rivals.iter().map(truncate));
    let full: Vec<&SeqModel> = std::iter::once(&fam.lifted).chain(fam.rivals.iter()).collect();

    let n = points.len();
    let dist: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| metric_ds(&points[i], &points[j]).expect("zero tails"))
                .collect()
        })
        .collect();
    let d = QuasiPseudoMetric::from_table(dist).expect("a sup-distance table");
    let t = induced_topology(&d).expect("small carrier");

    let mut pairs = Vec::new();
    for (i, x) in full.iter().enumerate() {
        for (j, y) in full.iter().enumerate() {
            if x.coordinatewise_le(y).expect("shared tail") {
                pairs.push((i, j));
            }
        }
    }
    let p = FinitePreorder::from_pairs(n, &pairs).expect("small carrier");

    let collapse = d.get(0, n - 1).is_zero();
    let upset = p.upper_contour(0);
    let upset_open = t.is_open(&upset);
    let refinement = t.finer_than(&alexandroff_topology(&p).expect("small carrier"));
    let lower = is_lower_continuous(&p, &t);
    let bicond = lower_continuity_iff_upper_refinement(&p, &t).expect("matching carriers");

    vec![
        CheckReport::new(suite, "fragment-window-collapses-deepest-rival", status_of(collapse))
            .with_anchor("SvenEx1")
            .with_observed("distance", format_rat(d.get(0, n - 1)))
            .with_expected("0 exactly"),
        CheckReport::new(suite, "fragment-upset-at-limit-escapes-window", status_of(!upset_open))
            .with_anchor("SvenEx1")
            .with_observed("upset-open-in-window-topology", upset_open.to_string())
            .with_expected("false"),
        CheckReport::new(
            suite,
            "fragment-window-not-finer-than-alexandroff",
            status_of(!refinement),
        )
        .with_anchor("SvenEx1")
        .with_observed("finer", refinement.to_string())
        .with_expected("false"),
        CheckReport::new(
            suite,
            "fragment-lower-continuity-fails-in-lockstep",
            status_of(!lower && bicond.holds()),
        )
        .with_anchor("SvenEx1")
        .with_observed("lower-continuous", lower.to_string())
        .with_observed("biconditional-holds", bicond.holds().to_string())
        .with_expected("false and true"),
    ]
}

/// The same family under the p-norms: n coordinates off by 1/n give
/// n^(1/p - 1).
pub fn lsupnorm(cfg: &RunConfig) -> Vec<CheckReport> {
    let suite = "lsupnorm";
    let p = cfg.p_or(2.0);
    let fam = triangle_family(FAMILY_DEPTH);
    let mut rows = Vec::new();
    for (i, rival) in fam.rivals.iter().enumerate() {
        let n = i + 1;
        let want = (n as f64).powf(1.0 / p - 1.0);
        let got = metric_dp(&fam.lifted, rival, p).expect("family members share a tail");
        rows.push(
            CheckReport::new(suite, format!("dp-n-{n:02}"), status_of(rel_close(got, want, 1e-9)))
                .with_anchor("Lsupnorm")
                .with_observed("d_p", format!("{got:.12e}"))
                .with_observed("p", p.to_string())
                .with_expected(format!("n^(1/p - 1) = {want:.12e}"))
                .with_tolerance("1e-9 relative"),
        );
    }
    rows
}

/// The vanishing-gap family: distances to the two-coordinate limit under
/// d_s, d_p, and d_q, then the threshold-count verdicts under both sigma
/// readings.
pub fn eneg(cfg: &RunConfig) -> Vec<CheckReport> {
    let suite = "eneg";
    let p = cfg.p_or(2.0);
    let q = cfg.q_or(0.5);
    let fam = vanishing_gap_family(GAP_DEPTH);
    let mut rows = Vec::new();

    for (i, member) in fam.members.iter().enumerate() {
        let n = i + 1;
        let pow = 1.0 / (1u64 << n) as f64;

        let want_s = rat(1, 1i64 << n);
        let got_s = metric_ds(&fam.limit, member).expect("zero tails");
        rows.push(
            CheckReport::new(suite, format!("ds-n-{n:02}"), status_of(got_s == want_s))
                .with_anchor("Eneg")
                .with_observed("d_s", format_rat(&got_s))
                .with_expected(format!("{} exactly", format_rat(&want_s)))
                .with_tolerance("0"),
        );

        let want_p = 2f64.powf(1.0 / p) * pow;
        let got_p = metric_dp(&fam.limit, member, p).expect("zero tails");
        rows.push(
            CheckReport::new(suite, format!("dp-n-{n:02}"), status_of(rel_close(got_p, want_p, 1e-9)))
                .with_anchor("Eneg")
                .with_observed("d_p", format!("{got_p:.12e}"))
                .with_observed("p", p.to_string())
                .with_expected(format!("2^(1/p)/2^n = {want_p:.12e}"))
                .with_tolerance("1e-9 relative"),
        );

        let want_q = (2.0 * pow.powf(q)).min(1.0);
        let got_q = metric_dq(&fam.limit, member, q).expect("zero tails");
        rows.push(
            CheckReport::new(suite, format!("dq-n-{n:02}"), status_of(rel_close(got_q, want_q, 1e-9)))
                .with_anchor("Eneg")
                .with_observed("d_q", format!("{got_q:.12e}"))
                .with_observed("q", q.to_string())
                .with_expected(format!("min(1, 2/2^(nq)) = {want_q:.12e}"))
                .with_tolerance("1e-9 relative"),
        );
    }

    rows.extend(verdict_rows(suite, &fam));
    rows.extend(negativity_rows(suite));
    rows
}

/// The half-threshold relation, reported branch by branch: the windowed
/// count reading decides member against crossover; the literal extended
/// count leaves them incomparable because both zero tails count infinitely;
/// crossover sits strictly below the constant half floor either way.
fn verdict_rows(suite: &str, fam: &ordtopia_core::seq::GapFamily) -> Vec<CheckReport> {
    let member = &fam.members[4];
    let k = VERDICT_WINDOW;
    let mut rows = Vec::new();

    let fwd = pre_half(member, &fam.crossover, k, SigmaMode::Window).expect("comparable");
    let back = pre_half(&fam.crossover, member, k, SigmaMode::Window).expect("comparable");
    rows.push(
        CheckReport::new(
            suite,
            "verdict-member-below-crossover-windowed",
            status_of(fwd && !back),
        )
        .with_anchor("Eneg")
        .with_observed("forward", fwd.to_string())
        .with_observed("backward", back.to_string())
        .with_expected("strictly below under the windowed count"),
    );

    let fwd = pre_half(member, &fam.crossover, k, SigmaMode::Extended).expect("comparable");
    let back = pre_half(&fam.crossover, member, k, SigmaMode::Extended).expect("comparable");
    rows.push(
        CheckReport::new(
            suite,
            "verdict-member-crossover-incomparable-extended",
            status_of(!fwd && !back),
        )
        .with_anchor("Eneg")
        .with_observed("forward", fwd.to_string())
        .with_observed("backward", back.to_string())
        .with_expected("incomparable under the literal extended count"),
    );

    for (mode, label) in [(SigmaMode::Window, "windowed"), (SigmaMode::Extended, "extended")] {
        let fwd = pre_half(&fam.crossover, &fam.half_floor, k, mode).expect("comparable");
        let back = pre_half(&fam.half_floor, &fam.crossover, k, mode).expect("comparable");
        rows.push(
            CheckReport::new(
                suite,
                format!("verdict-crossover-below-half-floor-{label}"),
                status_of(fwd && !back),
            )
            .with_anchor("Eneg")
            .with_observed("forward", fwd.to_string())
            .with_observed("backward", back.to_string())
            .with_expected("strictly below under either count"),
        );
    }
    rows
}

/// The zero-threshold twin on the negative family.
fn negativity_rows(suite: &str) -> Vec<CheckReport> {
    let fam = negative_gap_family(GAP_DEPTH);
    let member = &fam.members[4];
    let k = VERDICT_WINDOW;
    let mut rows = Vec::new();
    for (mode, label) in [(SigmaMode::Window, "windowed"), (SigmaMode::Extended, "extended")] {
        let fwd = pre_plus(member, &fam.middle, k, mode).expect("comparable");
        let back = pre_plus(&fam.middle, member, k, mode).expect("comparable");
        rows.push(
            CheckReport::new(
                suite,
                format!("negativity-member-below-middle-{label}"),
                status_of(fwd && !back),
            )
            .with_anchor("Eneg")
            .with_observed("forward", fwd.to_string())
            .with_observed("backward", back.to_string())
            .with_expected("strictly below"),
        );
        let fwd = pre_plus(&fam.middle, &fam.origin, k, mode).expect("comparable");
        let back = pre_plus(&fam.origin, &fam.middle, k, mode).expect("comparable");
        rows.push(
            CheckReport::new(
                suite,
                format!("negativity-middle-below-origin-{label}"),
                status_of(fwd && !back),
            )
            .with_anchor("Eneg")
            .with_observed("forward", fwd.to_string())
            .with_observed("backward", back.to_string())
            .with_expected("strictly below"),
        );
    }
    rows
}

/// Distance-to-the-simplex witnesses: thin uniform blocks and far spikes
/// push d_s, d_c, d_p to zero while d_1 and d_q certificates pin the
/// distance at one.
pub fn simplex(cfg: &RunConfig) -> Vec<CheckReport> {
    let suite = "simplex";
    let p = cfg.p_or(6.0);
    let q = cfg.q_or(0.5);
    let zero = SeqModel::zeros();
    let milli = rat(1, 1000);
    let mut rows = Vec::new();

    // Doubling block widths up to 2^12.
    let widths: Vec<usize> = (0..=12).map(|j| 1usize << j).collect();

    let ds: Vec<Rat> = widths
        .iter()
        .map(|&n| metric_ds(&zero, &uniform_block(n)).expect("zero tails"))
        .collect();
    let decreasing = ds.windows(2).all(|w| w[1] < w[0]);
    rows.push(
        CheckReport::new(suite, "ds-witness-decreasing", status_of(decreasing))
            .with_anchor("Simplex")
            .with_observed("first", format_rat(&ds[0]))
            .with_observed("last", format_rat(ds.last().expect("nonempty")))
            .with_expected("strictly decreasing across doubling widths"),
    );
    let last = ds.last().expect("nonempty");
    rows.push(
        CheckReport::new(suite, "ds-witness-threshold", status_of(*last < milli))
            .with_anchor("Simplex")
            .with_observed("d_s", format_rat(last))
            .with_expected("< 1/1000 by width 2^12"),
    );

    let dc: Vec<Rat> = (1..=10)
        .map(|n| metric_dc(&zero, &far_spike(n)).expect("zero tails"))
        .collect();
    let decreasing = dc.windows(2).all(|w| w[1] < w[0]);
    rows.push(
        CheckReport::new(suite, "dc-witness-decreasing", status_of(decreasing))
            .with_anchor("Simplex")
            .with_observed("first", format_rat(&dc[0]))
            .with_observed("last", format_rat(dc.last().expect("nonempty")))
            .with_expected("strictly decreasing as the spike recedes"),
    );
    let last = dc.last().expect("nonempty");
    rows.push(
        CheckReport::new(suite, "dc-witness-threshold", status_of(*last < milli))
            .with_anchor("Simplex")
            .with_observed("d_c", format_rat(last))
            .with_expected("< 1/1000 by position 10"),
    );

    let dp: Vec<f64> = widths
        .iter()
        .map(|&n| metric_dp(&zero, &uniform_block(n), p).expect("zero tails"))
        .collect();
    let decreasing = dp.windows(2).all(|w| w[1] < w[0]);
    rows.push(
        CheckReport::new(suite, "dp-witness-decreasing", status_of(decreasing))
            .with_anchor("Simplex")
            .with_observed("first", format!("{:.6e}", dp[0]))
            .with_observed("last", format!("{:.6e}", dp.last().expect("nonempty")))
            .with_observed("p", p.to_string())
            .with_expected("strictly decreasing across doubling widths"),
    );
    let last = *dp.last().expect("nonempty");
    rows.push(
        CheckReport::new(suite, "dp-witness-threshold", status_of(last < 1e-3))
            .with_anchor("Simplex")
            .with_observed("d_p", format!("{last:.6e}"))
            .with_observed("p", p.to_string())
            .with_expected("< 1e-3 by width 2^12"),
    );

    let one = rat_int(1);
    let d1_pinned = widths
        .iter()
        .all(|&n| metric_d1(&zero, &uniform_block(n)).expect("zero tails") == one);
    rows.push(
        CheckReport::new(suite, "d1-certificate", status_of(d1_pinned))
            .with_anchor("Simplex")
            .with_observed("widths", widths.len().to_string())
            .with_expected("distance exactly 1 at every width")
            .with_tolerance("0"),
    );
    let dq_pinned = widths
        .iter()
        .all(|&n| metric_dq(&zero, &uniform_block(n), q).expect("zero tails") == 1.0);
    rows.push(
        CheckReport::new(suite, "dq-certificate", status_of(dq_pinned))
            .with_anchor("Simplex")
            .with_observed("widths", widths.len().to_string())
            .with_observed("q", q.to_string())
            .with_expected("distance exactly 1 at every width")
            .with_tolerance("0"),
    );
    rows
}

/// The gauged overtaking criterion on the rearranged-block family, next to
/// the grading relation it refines.
pub fn overtaking_demo(_cfg: &RunConfig) -> Vec<CheckReport> {
    let suite = "overtaking-demo";
    const DEPTH: usize = 8;
    let fam = triangle_family(DEPTH);
    let mut rows = Vec::new();

    for gauge in [Gauge::SqrtShift, Gauge::LogShift, Gauge::Linear] {
        let label = gauge_label(gauge);
        let all_equivalent = fam.rivals.iter().all(|rival| {
            overtaking_compare(rival, &fam.ramp, gauge).expect("shared tail").equivalent()
        });
        rows.push(
            CheckReport::new(suite, format!("anonymity-{label}"), status_of(all_equivalent))
                .with_anchor("DiamondNew")
                .with_observed("rearrangements", DEPTH.to_string())
                .with_expected("every rearranged block is equivalent to the ramp"),
        );

        let verdict = overtaking_compare(&fam.ramp, &fam.lifted, gauge).expect("shared tail");
        rows.push(
            CheckReport::new(
                suite,
                format!("pareto-{label}"),
                status_of(verdict.x_strictly_below()),
            )
            .with_anchor("DiamondNew")
            .with_observed("ramp-below-lifted", verdict.x_strictly_below().to_string())
            .with_expected("pointwise dominance forces a strict verdict"),
        );
    }

    let x = SeqModel::new(vec![rat_int(0), rat_int(1)], Tail::Zero);
    let swap = FinitePermutation::transposition(2, 1, 2).expect("positions in range");
    let grid = [rat(1, 4), rat(1, 2), rat(3, 4)];
    for gauge in [Gauge::SqrtShift, Gauge::LogShift] {
        let ok = check_dfsc(&Overtaking { gauge }, &x, &swap, &grid).expect("valid instance");
        rows.push(
            CheckReport::new(suite, format!("dfsc-{}", gauge_label(gauge)), status_of(ok))
                .with_anchor("DiamondNew")
                .with_observed("grid", "1/4, 1/2, 3/4")
                .with_expected("every mixture strictly beats both endpoints"),
        );
    }
    let linear = check_dfsc(&Overtaking { gauge: Gauge::Linear }, &x, &swap, &grid)
        .expect("valid instance");
    rows.push(
        CheckReport::new(suite, "dfsc-linear-control", status_of(!linear))
            .with_anchor("DiamondNew")
            .with_observed("improved", linear.to_string())
            .with_expected("no mixture improves under the straight sum"),
    );

    for gauge in [Gauge::SqrtShift, Gauge::LogShift] {
        let ok = check_sensitivity_present(&Overtaking { gauge }, &fam.ramp)
            .expect("first coordinate explicit");
        rows.push(
            CheckReport::new(
                suite,
                format!("sensitivity-{}", gauge_label(gauge)),
                status_of(ok),
            )
            .with_anchor("DiamondNew")
            .with_expected("raising the first coordinate is a strict improvement"),
        );
    }

    // Grading on the same family: each rearranged block grades weakly below
    // the lifted stream, strictly so, and the gauged criterion agrees.
    let k = fam.lifted.prefix_len();
    let graded = fam.rivals.iter().all(|rival| {
        grading_le(rival, &fam.lifted, k).expect("window covers prefixes")
            && !grading_le(&fam.lifted, rival, k).expect("window covers prefixes")
    });
    rows.push(
        CheckReport::new(suite, "grading-rivals-strictly-below-lifted", status_of(graded))
            .with_anchor("Pminpreorder")
            .with_observed("window", k.to_string())
            .with_expected("dominance after sorting, never the reverse"),
    );
    let refined = fam.rivals.iter().all(|rival| {
        [Gauge::SqrtShift, Gauge::LogShift, Gauge::Linear].into_iter().all(|gauge| {
            overtaking_compare(rival, &fam.lifted, gauge).expect("shared tail").x_le_y
        })
    });
    rows.push(
        CheckReport::new(suite, "grading-verdicts-carry-to-overtaking", status_of(refined))
            .with_anchor("Pminpreorder")
            .with_observed("pairs", fam.rivals.len().to_string())
            .with_expected("graded pairs stay weakly ordered under every gauge"),
    );
    let widened = (k..k + 4)
        .all(|w| grading_le(&fam.rivals[0], &fam.lifted, w).expect("window covers prefixes"));
    rows.push(
        CheckReport::new(suite, "grading-stable-under-wider-windows", status_of(widened))
            .with_anchor("Pminpreorder")
            .with_observed("windows", format!("{k}..{}", k + 3))
            .with_expected("a true verdict survives widening"),
    );

    rows
}

fn gauge_label(g: Gauge) -> &'static str {
    match g {
        Gauge::SqrtShift => "sqrt",
        Gauge::LogShift => "log",
        Gauge::Linear => "linear",
    }
}
