//! Window grading (sorted dominance over a finite window plus a tail
//! comparison) and the threshold-count refinements layered on top of it.

use num::Zero;

use crate::rational::{rat_int, Rat};

use super::{SeqError, SeqModel, Tail};

/// Count that may be infinite; infinite counts compare above every finite
/// one and equal to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExtendedCount {
    Finite(u64),
    Infinite,
}

/// How the threshold counts treat the tail: `Extended` counts across the
/// whole stream and can come out infinite, `Window` truncates at the window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaMode {
    Extended,
    Window,
}

enum WindowShape {
    /// Both tails are evaluable constants; the window runs to `k` and the
    /// tail constants gate the verdict.
    Constant { cx: Rat, cy: Rat },
    /// Identical symbolic tails; only the shared prefix matters.
    Shared { len: usize },
}

fn window_shape(x: &SeqModel, y: &SeqModel, k: usize) -> Result<WindowShape, SeqError> {
    let needed = x.prefix_len().max(y.prefix_len());
    if k < needed {
        return Err(SeqError::WindowTooSmall { k, needed });
    }
    match (x.tail(), y.tail()) {
        (Tail::Zero | Tail::Const(_), Tail::Zero | Tail::Const(_)) => {
            let value = |t: &Tail| match t {
                Tail::Zero => rat_int(0),
                Tail::Const(c) => c.clone(),
                Tail::Named { .. } => unreachable!("constant arm"),
            };
            Ok(WindowShape::Constant { cx: value(x.tail()), cy: value(y.tail()) })
        }
        (Tail::Named { id: a, offset: oa }, Tail::Named { id: b, offset: ob })
            if a == b && oa == ob && x.prefix_len() == y.prefix_len() =>
        {
            Ok(WindowShape::Shared { len: x.prefix_len() })
        }
        _ => Err(SeqError::IncomparableTails),
    }
}

/// Whether some rearrangement of the first `k` coordinates of `x` sits
/// pointwise below `y`. Equivalent to sorted-window dominance, with the
/// tail constants compared separately; widening the window never flips a
/// true verdict to false.
pub fn grading_le(x: &SeqModel, y: &SeqModel, k: usize) -> Result<bool, SeqError> {
    let span = match window_shape(x, y, k)? {
        WindowShape::Constant { cx, cy } => {
            if cx > cy {
                return Ok(false);
            }
            k
        }
        // Beyond the shared prefix the streams agree coordinate by
        // coordinate, so those positions cannot break dominance.
        WindowShape::Shared { len } => len,
    };
    let mut xs: Vec<Rat> = (1..=span)
        .map(|i| x.value_at(i).expect("window values are evaluable"))
        .collect();
    let mut ys: Vec<Rat> = (1..=span)
        .map(|i| y.value_at(i).expect("window values are evaluable"))
        .collect();
    xs.sort();
    ys.sort();
    Ok(xs.iter().zip(&ys).all(|(a, b)| a <= b))
}

/// Number of coordinates strictly below `threshold`, tail included.
pub fn sigma_below(x: &SeqModel, threshold: &Rat) -> Result<ExtendedCount, SeqError> {
    let in_prefix = x.prefix().iter().filter(|v| *v < threshold).count() as u64;
    let tail_below = match x.tail() {
        Tail::Zero => Rat::zero() < *threshold,
        Tail::Const(c) => c < threshold,
        Tail::Named { .. } => {
            return Err(SeqError::TailNotEvaluable { index: x.prefix_len() + 1 })
        }
    };
    Ok(if tail_below {
        ExtendedCount::Infinite
    } else {
        ExtendedCount::Finite(in_prefix)
    })
}

/// Number of coordinates strictly below `threshold` among the first `k`.
pub fn sigma_below_window(x: &SeqModel, threshold: &Rat, k: usize) -> Result<u64, SeqError> {
    let mut count = 0u64;
    for pos in 1..=k {
        let v = x
            .value_at(pos)
            .ok_or(SeqError::TailNotEvaluable { index: pos })?;
        if v < *threshold {
            count += 1;
        }
    }
    Ok(count)
}

fn pre_threshold(
    x: &SeqModel,
    y: &SeqModel,
    k: usize,
    mode: SigmaMode,
    threshold: &Rat,
) -> Result<bool, SeqError> {
    if grading_le(x, y, k)? {
        return Ok(true);
    }
    let more_below = match mode {
        SigmaMode::Extended => sigma_below(x, threshold)? > sigma_below(y, threshold)?,
        SigmaMode::Window => {
            sigma_below_window(x, threshold, k)? > sigma_below_window(y, threshold, k)?
        }
    };
    Ok(more_below)
}

/// Grading extended by the half-threshold count: x falls weakly below y
/// when the window grading holds or x has strictly more coordinates under
/// one half.
pub fn pre_half(x: &SeqModel, y: &SeqModel, k: usize, mode: SigmaMode) -> Result<bool, SeqError> {
    pre_threshold(x, y, k, mode, &crate::rational::rat(1, 2))
}

/// Grading extended by the zero-threshold count: the analogous relation for
/// streams that dip below zero.
pub fn pre_plus(x: &SeqModel, y: &SeqModel, k: usize, mode: SigmaMode) -> Result<bool, SeqError> {
    pre_threshold(x, y, k, mode, &rat_int(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn shared_symbolic_tails_skip_the_tail_gate() {
        let t = Tail::Named { id: "w".into(), offset: 2 };
        let x = SeqModel::new(vec![rat_int(1), rat_int(0)], t.clone());
        let y = SeqModel::new(vec![rat_int(0), rat_int(1)], t);
        assert!(grading_le(&x, &y, 5).unwrap());
        assert!(grading_le(&y, &x, 5).unwrap());
    }

    #[test]
    fn threshold_is_strict() {
        let edge = SeqModel::new(vec![rat(1, 2)], Tail::Zero);
        assert_eq!(sigma_below_window(&edge, &rat(1, 2), 1).unwrap(), 0);
        assert_eq!(sigma_below_window(&edge, &rat(1, 2), 3).unwrap(), 2);
    }
}
