//! Five distances on comparable streams. The sup, discounted, and total
//! variation distances are exact rationals; the power-sum pair is evaluated
//! in floating point with a compensated sum.

use num::{BigInt, One, Signed};

use crate::rational::{rat_int, rat_to_f64, Rat};

use super::{SeqError, SeqModel};

fn gaps(x: &SeqModel, y: &SeqModel) -> Result<Vec<(usize, Rat)>, SeqError> {
    Ok(x.diff_support(y)?
        .into_iter()
        .map(|(pos, a, b)| (pos, (a - b).abs()))
        .collect())
}

/// Supremum of the coordinate gaps.
pub fn metric_ds(x: &SeqModel, y: &SeqModel) -> Result<Rat, SeqError> {
    Ok(gaps(x, y)?
        .into_iter()
        .map(|(_, gap)| gap)
        .max()
        .unwrap_or_else(|| rat_int(0)))
}

/// Geometrically discounted sum of the gaps: coordinate t carries weight
/// 2^-t.
pub fn metric_dc(x: &SeqModel, y: &SeqModel) -> Result<Rat, SeqError> {
    let mut total = rat_int(0);
    for (pos, gap) in gaps(x, y)? {
        let weight = Rat::new(BigInt::one(), BigInt::one() << pos);
        total += gap * weight;
    }
    Ok(total)
}

/// Total variation capped at 1.
pub fn metric_d1(x: &SeqModel, y: &SeqModel) -> Result<Rat, SeqError> {
    let total: Rat = gaps(x, y)?.into_iter().map(|(_, gap)| gap).sum();
    Ok(total.min(rat_int(1)))
}

fn kahan_sum(terms: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0f64;
    for term in terms {
        let adjusted = term - carry;
        let next = sum + adjusted;
        carry = (next - sum) - adjusted;
        sum = next;
    }
    sum
}

/// p-th root of the p-power gap sum, capped at 1. Needs p strictly between
/// 1 and infinity.
pub fn metric_dp(x: &SeqModel, y: &SeqModel, p: f64) -> Result<f64, SeqError> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(SeqError::InvalidExponent { value: p, range: "(1, inf)" });
    }
    let gaps = gaps(x, y)?;
    let sum = kahan_sum(gaps.iter().map(|(_, gap)| rat_to_f64(gap).powf(p)));
    Ok(sum.powf(1.0 / p).min(1.0))
}

/// q-power gap sum without a root, capped at 1. Needs q strictly between
/// 0 and 1; in that range the power sum is superadditive in the gaps, which
/// is what keeps thin wide blocks far from the origin.
pub fn metric_dq(x: &SeqModel, y: &SeqModel, q: f64) -> Result<f64, SeqError> {
    if !(q > 0.0 && q < 1.0) {
        return Err(SeqError::InvalidExponent { value: q, range: "(0, 1)" });
    }
    let gaps = gaps(x, y)?;
    let sum = kahan_sum(gaps.iter().map(|(_, gap)| rat_to_f64(gap).powf(q)));
    Ok(sum.min(1.0))
}
