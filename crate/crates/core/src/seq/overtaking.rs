//! Gauged overtaking comparison: the sign of the gauge-sum difference over
//! the finitely many coordinates where two streams disagree.
//!
//! The sign is decided in stages. Equal rearrangements short-circuit to
//! equivalence, the linear gauge sums exactly, and the curved gauges go
//! through floating point with an error margin, escalating to rational
//! interval bounds of growing precision when the margin cannot separate the
//! sum from zero. A sum at exactly zero stays undecided through every stage
//! and lands on equivalence, which is the correct verdict for it.

use num::Signed;

use crate::rational::{rat_to_f64, Rat};

use super::{Gauge, SeqError, SeqModel};

/// Both directions of a weak comparison; both flags set means equivalence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrefVerdict {
    pub x_le_y: bool,
    pub y_le_x: bool,
}

impl PrefVerdict {
    pub const BOTH: PrefVerdict = PrefVerdict { x_le_y: true, y_le_x: true };

    pub fn equivalent(&self) -> bool {
        self.x_le_y && self.y_le_x
    }

    pub fn x_strictly_below(&self) -> bool {
        self.x_le_y && !self.y_le_x
    }

    pub fn y_strictly_below(&self) -> bool {
        self.y_le_x && !self.x_le_y
    }

    pub fn incomparable(&self) -> bool {
        !self.x_le_y && !self.y_le_x
    }
}

const ESCALATION_BITS: [u32; 4] = [96, 192, 384, 768];
const F64_SLACK: f64 = 1e-12;

/// Compare two streams by the sign of sum(g(x_t) - g(y_t)) over the
/// coordinates where they differ.
pub fn overtaking_compare(
    x: &SeqModel,
    y: &SeqModel,
    gauge: Gauge,
) -> Result<PrefVerdict, SeqError> {
    let support = x.diff_support(y)?;
    if support.is_empty() {
        return Ok(PrefVerdict::BOTH);
    }
    for (pos, a, b) in &support {
        if a.is_negative() || b.is_negative() {
            return Err(SeqError::GaugeDomain { index: *pos });
        }
    }

    // A rearrangement contributes nothing to the sum under any gauge.
    let mut xs: Vec<&Rat> = support.iter().map(|(_, a, _)| a).collect();
    let mut ys: Vec<&Rat> = support.iter().map(|(_, _, b)| b).collect();
    xs.sort();
    ys.sort();
    if xs == ys {
        return Ok(PrefVerdict::BOTH);
    }

    if let Gauge::Linear = gauge {
        let total: Rat = support.iter().map(|(_, a, b)| a - b).sum();
        let sign = if total.is_positive() {
            1
        } else if total.is_negative() {
            -1
        } else {
            0
        };
        return Ok(verdict_from_sign(sign));
    }

    if let Some(sign) = f64_sign(&support, gauge) {
        return Ok(verdict_from_sign(sign));
    }
    for bits in ESCALATION_BITS {
        if let Some(sign) = interval_sign(&support, gauge, bits) {
            return Ok(verdict_from_sign(sign));
        }
    }
    Ok(PrefVerdict::BOTH)
}

fn verdict_from_sign(sign: i8) -> PrefVerdict {
    match sign {
        s if s > 0 => PrefVerdict { x_le_y: false, y_le_x: true },
        s if s < 0 => PrefVerdict { x_le_y: true, y_le_x: false },
        _ => PrefVerdict::BOTH,
    }
}

fn f64_sign(support: &[(usize, Rat, Rat)], gauge: Gauge) -> Option<i8> {
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    let mut margin = 0.0f64;
    for (_, a, b) in support {
        let ga = gauge.eval_f64(rat_to_f64(a));
        let gb = gauge.eval_f64(rat_to_f64(b));
        let term = ga - gb;
        let adjusted = term - carry;
        let next = sum + adjusted;
        carry = (next - sum) - adjusted;
        sum = next;
        margin += F64_SLACK * (1.0 + ga.abs() + gb.abs());
    }
    if !sum.is_finite() || !margin.is_finite() {
        return None;
    }
    if sum > margin {
        Some(1)
    } else if sum < -margin {
        Some(-1)
    } else {
        None
    }
}

fn interval_sign(support: &[(usize, Rat, Rat)], gauge: Gauge, bits: u32) -> Option<i8> {
    let mut lo_acc: Option<Rat> = None;
    let mut hi_acc: Option<Rat> = None;
    for (_, a, b) in support {
        let (a_lo, a_hi) = gauge.eval_bounds(a, bits);
        let (b_lo, b_hi) = gauge.eval_bounds(b, bits);
        let term_lo = a_lo - b_hi;
        let term_hi = a_hi - b_lo;
        lo_acc = Some(match lo_acc {
            Some(acc) => acc + term_lo,
            None => term_lo,
        });
        hi_acc = Some(match hi_acc {
            Some(acc) => acc + term_hi,
            None => term_hi,
        });
    }
    let (lo, hi) = (lo_acc?, hi_acc?);
    if lo.is_positive() {
        Some(1)
    } else if hi.is_negative() {
        Some(-1)
    } else {
        None
    }
}

/// A two-sided social comparison of utility streams.
pub trait WelfareCriterion {
    fn name(&self) -> &'static str;
    fn compare(&self, x: &SeqModel, y: &SeqModel) -> Result<PrefVerdict, SeqError>;
}

/// The gauged overtaking sum as a criterion.
pub struct Overtaking {
    pub gauge: Gauge,
}

impl WelfareCriterion for Overtaking {
    fn name(&self) -> &'static str {
        match self.gauge {
            Gauge::SqrtShift => "overtaking-sqrt",
            Gauge::LogShift => "overtaking-log",
            Gauge::Linear => "overtaking-linear",
        }
    }

    fn compare(&self, x: &SeqModel, y: &SeqModel) -> Result<PrefVerdict, SeqError> {
        overtaking_compare(x, y, self.gauge)
    }
}

/// Declares everything equivalent; a foil for the axiom checks.
pub struct TotalIndifference;

impl WelfareCriterion for TotalIndifference {
    fn name(&self) -> &'static str {
        "total-indifference"
    }

    fn compare(&self, _x: &SeqModel, _y: &SeqModel) -> Result<PrefVerdict, SeqError> {
        Ok(PrefVerdict::BOTH)
    }
}
