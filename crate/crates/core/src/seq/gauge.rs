//! Concave reweightings applied to coordinates before summation. Each gauge
//! evaluates fast in floating point and, when a sign decision sits too close
//! to zero, as rational interval bounds at a requested precision.

use num::{BigInt, One, Signed, Zero};

use crate::rational::{rat, rat_int, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gauge {
    /// t maps to sqrt(t + 1).
    SqrtShift,
    /// t maps to ln(t + 1) + 1.
    LogShift,
    /// t maps to t: the straight sum, kept as a control.
    Linear,
}

impl Gauge {
    pub fn eval_f64(&self, t: f64) -> f64 {
        match self {
            Gauge::SqrtShift => (t + 1.0).sqrt(),
            Gauge::LogShift => (t + 1.0).ln() + 1.0,
            Gauge::Linear => t,
        }
    }

    /// Strict concavity is what rewards smoothing a rearranged pair.
    pub fn is_strictly_concave(&self) -> bool {
        !matches!(self, Gauge::Linear)
    }

    /// Enclosing rational interval for the gauge value at `t >= 0`, with
    /// width on the order of 2^-bits.
    pub(crate) fn eval_bounds(&self, t: &Rat, bits: u32) -> (Rat, Rat) {
        debug_assert!(!t.is_negative());
        match self {
            Gauge::Linear => (t.clone(), t.clone()),
            Gauge::SqrtShift => sqrt_bounds(&(t + rat_int(1)), bits),
            Gauge::LogShift => {
                let (lo, hi) = ln_bounds(&(t + rat_int(1)), bits);
                (lo + rat_int(1), hi + rat_int(1))
            }
        }
    }
}

/// Floor-sqrt scaling: sqrt(p/q) = isqrt(p q 4^bits) / (q 2^bits), exact to
/// one unit in the scaled last place.
fn sqrt_bounds(r: &Rat, bits: u32) -> (Rat, Rat) {
    let p = r.numer();
    let q = r.denom();
    let scaled = (p * q) << (2 * bits as usize);
    let root = scaled.sqrt();
    let scale = q << (bits as usize);
    (
        Rat::new(root.clone(), scale.clone()),
        Rat::new(root + BigInt::one(), scale),
    )
}

/// ln r for r >= 1: halve r into [1, 2), expand 2 atanh((s-1)/(s+1)), and
/// recombine with interval bounds for ln 2.
fn ln_bounds(r: &Rat, bits: u32) -> (Rat, Rat) {
    debug_assert!(*r >= rat_int(1));
    let two = rat_int(2);
    let mut s = r.clone();
    let mut halvings = 0u32;
    while s >= two {
        s /= &two;
        halvings += 1;
    }
    let eps = Rat::new(BigInt::one(), BigInt::one() << (bits as usize + 2));
    let u = (&s - rat_int(1)) / (&s + rat_int(1));
    let (alo, ahi) = atanh_bounds(&u, &eps);
    let (slo, shi) = (alo * &two, ahi * &two);
    if halvings == 0 {
        return (slo, shi);
    }
    let (llo, lhi) = atanh_bounds(&rat(1, 3), &eps);
    let count = rat_int(i64::from(halvings));
    (
        slo + &count * llo * &two,
        shi + &count * lhi * &two,
    )
}

/// Partial sums of the odd power series with a geometric remainder bound,
/// valid for 0 <= u < 1/2.
fn atanh_bounds(u: &Rat, eps: &Rat) -> (Rat, Rat) {
    debug_assert!(!u.is_negative() && *u < rat(1, 2));
    if u.is_zero() {
        return (rat_int(0), rat_int(0));
    }
    let usq = u * u;
    let shrink = rat_int(1) - &usq;
    let mut partial = rat_int(0);
    let mut upow = u.clone();
    let mut odd = 1i64;
    loop {
        partial += &upow / rat_int(odd);
        upow *= &usq;
        odd += 2;
        // Remaining terms are dominated by upow/odd times a geometric tail.
        let bound = &upow / (rat_int(odd) * &shrink);
        if bound < *eps {
            return (partial.clone(), partial + bound);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_to_f64;

    #[test]
    fn bounds_bracket_the_float_values() {
        for gauge in [Gauge::SqrtShift, Gauge::LogShift, Gauge::Linear] {
            for t in [rat_int(0), rat(1, 3), rat_int(3), rat(17, 5), rat_int(120)] {
                let (lo, hi) = gauge.eval_bounds(&t, 96);
                assert!(lo <= hi);
                let f = gauge.eval_f64(rat_to_f64(&t));
                assert!(rat_to_f64(&lo) <= f + 1e-9 && f - 1e-9 <= rat_to_f64(&hi));
                let width = rat_to_f64(&(&hi - &lo));
                assert!(width < 1e-25, "96-bit bounds must be tight, got {width}");
            }
        }
    }

    #[test]
    fn sqrt_bounds_are_exact_on_squares() {
        let (lo, hi) = Gauge::SqrtShift.eval_bounds(&rat_int(3), 64);
        assert!(lo <= rat_int(2) && rat_int(2) <= hi);
        assert!(&hi - &lo <= Rat::new(BigInt::from(2), BigInt::one() << 64));
    }
}
