//! Executable axiom checks for welfare criteria. Each check validates its
//! instance first and reports a malformed one as an error rather than a
//! quiet pass.

use num::{One, Zero};

use crate::rational::{rat_int, Rat};

use super::{FinitePermutation, SeqError, SeqModel, WelfareCriterion};

/// Rearranging finitely many coordinates must land in the same indifference
/// class.
pub fn check_anonymity(
    criterion: &dyn WelfareCriterion,
    x: &SeqModel,
    perm: &FinitePermutation,
) -> Result<bool, SeqError> {
    let y = perm.apply(x)?;
    Ok(criterion.compare(x, &y)?.equivalent())
}

/// A stream pointwise below another, and different somewhere, must rank
/// strictly below it.
pub fn check_pareto(
    criterion: &dyn WelfareCriterion,
    below: &SeqModel,
    above: &SeqModel,
) -> Result<bool, SeqError> {
    if !below.coordinatewise_le(above)? {
        return Err(SeqError::BadInstance { reason: "first stream must sit pointwise below the second" });
    }
    let distinct = if below.metric_comparable(above) {
        !below.diff_support(above)?.is_empty()
    } else {
        // Pointwise comparable but metrically not: the constant tails
        // differ, so the streams differ on a whole tail.
        true
    };
    if !distinct {
        return Err(SeqError::BadInstance { reason: "streams must differ somewhere" });
    }
    Ok(criterion.compare(below, above)?.x_strictly_below())
}

/// Strict preference for mixing a stream with a rearrangement of itself:
/// every interior mixture must beat both endpoints.
pub fn check_dfsc(
    criterion: &dyn WelfareCriterion,
    x: &SeqModel,
    perm: &FinitePermutation,
    weights: &[Rat],
) -> Result<bool, SeqError> {
    let y = perm.apply(x)?;
    if y == *x {
        return Err(SeqError::BadInstance { reason: "permutation leaves the stream unchanged" });
    }
    let (zero, one) = (Rat::zero(), Rat::one());
    for s in weights {
        if *s <= zero || *s >= one {
            return Err(SeqError::BadInstance { reason: "mixing weights must be interior" });
        }
    }
    for s in weights {
        let mixture = mix(s, x, &y);
        let beats_x = criterion.compare(x, &mixture)?.x_strictly_below();
        let beats_y = criterion.compare(&y, &mixture)?.x_strictly_below();
        if !(beats_x && beats_y) {
            return Ok(false);
        }
    }
    Ok(true)
}

// The permutation preserves prefix length and tail, so a coordinatewise
// convex combination is well defined.
fn mix(s: &Rat, x: &SeqModel, y: &SeqModel) -> SeqModel {
    let rest = Rat::one() - s;
    let prefix = x
        .prefix()
        .iter()
        .zip(y.prefix())
        .map(|(a, b)| s * a + &rest * b)
        .collect();
    SeqModel::new(prefix, x.tail().clone())
}

/// Raising the first coordinate must strictly improve the stream.
pub fn check_sensitivity_present(
    criterion: &dyn WelfareCriterion,
    x: &SeqModel,
) -> Result<bool, SeqError> {
    let first = x
        .value_at(1)
        .ok_or(SeqError::BadInstance { reason: "first coordinate is symbolic" })?;
    let bumped = x.with_value(1, first + rat_int(1))?;
    Ok(criterion.compare(x, &bumped)?.x_strictly_below())
}
