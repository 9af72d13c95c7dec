//! Exact rational arithmetic helpers shared across the crate.
//!
//! All order-sensitive quantities (metric tables, sequence coordinates,
//! utilities) are `BigRational`, so comparisons are exact. Floating point
//! appears only where an operation is documented to return an approximation.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::ToPrimitive;
use thiserror::Error;

pub type Rat = BigRational;

/// Shorthand for p/q. Panics if q == 0.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Parses "p/q" or a bare integer "p". Whitespace is not accepted.
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    if s.is_empty() {
        return Err(RatParseError::Empty);
    }
    let mut parts = s.splitn(2, '/');
    let p = parts
        .next()
        .and_then(|t| t.parse::<BigInt>().ok())
        .ok_or_else(|| RatParseError::Malformed(s.to_string()))?;
    let q = match parts.next() {
        None => BigInt::from(1),
        Some(t) => t
            .parse::<BigInt>()
            .map_err(|_| RatParseError::Malformed(s.to_string()))?,
    };
    if q == BigInt::from(0) {
        return Err(RatParseError::ZeroDenominator(s.to_string()));
    }
    Ok(Rat::new(p, q))
}

/// Canonical form "p/q", reduced, denominator positive. Integers keep an
/// explicit "/1" so serialized tables are uniform.
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Nearest f64; callers accept the usual double-rounding loss.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// serde adapters: rationals cross the wire as "p/q" strings.
pub mod serde_rat {
    use super::{format_rat, parse_rat, Rat};
    use serde::de::Error as DeError;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rat(&raw).map_err(D::Error::custom)
    }
}

pub mod serde_rat_vec {
    use super::{format_rat, parse_rat, Rat};
    use serde::de::Error as DeError;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rat(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rat(s).map_err(D::Error::custom))
            .collect()
    }
}

pub mod serde_rat_mat {
    use super::{format_rat, parse_rat, Rat};
    use serde::de::Error as DeError;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &[Vec<Rat>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(m.len()))?;
        for row in m {
            let strs: Vec<String> = row.iter().map(format_rat).collect();
            seq.serialize_element(&strs)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rat>>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        raw.iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_rat(s).map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3/4", "-3/4", "0/1", "7/1", "22/7"] {
            assert_eq!(format_rat(&parse_rat(s).unwrap()), s);
        }
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(parse_rat("6/8").unwrap(), rat(3, 4));
        assert_eq!(parse_rat("3/-4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rat("5").unwrap(), rat_int(5));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert_eq!(parse_rat(""), Err(RatParseError::Empty));
        assert!(matches!(parse_rat("1/0"), Err(RatParseError::ZeroDenominator(_))));
        assert!(matches!(parse_rat("a/b"), Err(RatParseError::Malformed(_))));
        assert!(matches!(parse_rat("1/2/3"), Err(RatParseError::Malformed(_))));
    }
}
