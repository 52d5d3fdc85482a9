//! Exact rational arithmetic and the `p/q` wire format.
//!
//! Agreements, densities and thresholds are always exact rationals; floats
//! appear only in sample-count formulas (where a ceiling is taken) and in
//! empirical frequency reports.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational. Big integers because bound arithmetic like 1/ε^9 easily
/// leaves the i64 range once ε has a large denominator.
pub type Rat = BigRational;

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Ratio of two counts, the common case `|matches| / |total|`.
pub fn rat_counts(num: u64, den: u64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Renders a rational in the wire format: `p/q` in lowest terms, or just
/// `p` when the denominator is 1 (so `0`, `1`, `1/2`, `-3/4`).
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses the wire format accepted everywhere a rational is taken: `p/q`
/// or a bare integer `p`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let parse_int = |part: &str| -> Result<BigInt> {
        part.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::invalid(format!("malformed rational `{s}`")))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(Error::invalid(format!("zero denominator in `{s}`")));
            }
            Ok(Rat::new(parse_int(num)?, den))
        }
    }
}

/// Nearest f64, for report fields that are explicitly approximate.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// ceil(r) as u64; errors on negative input.
pub fn ceil_to_u64(r: &Rat) -> Result<u64> {
    if r.is_negative() {
        return Err(Error::invalid("expected a nonnegative quantity"));
    }
    r.ceil()
        .to_integer()
        .to_u64()
        .ok_or_else(|| Error::budget("quantity too large for u64"))
}

/// Serde adapter: rationals as `p/q` strings in JSON.
pub mod rat_serde {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(de)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Option<Rat>` fields (`null` or absent means none).
pub mod rat_opt_serde {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        r: &Option<Rat>,
        ser: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match r {
            Some(r) => ser.serialize_some(&format_rat(r)),
            None => ser.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<Option<Rat>, D::Error> {
        Option::<String>::deserialize(de)?
            .map(|s| parse_rat(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Serde adapter for `Vec<Rat>` fields.
pub mod rat_vec_serde {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rat(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        de: D,
    ) -> std::result::Result<Vec<Rat>, D::Error> {
        let raw = Vec::<String>::deserialize(de)?;
        raw.iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formats_lowest_terms() {
        assert_eq!(format_rat(&rat(2, 4)), "1/2");
        assert_eq!(format_rat(&rat(0, 5)), "0");
        assert_eq!(format_rat(&rat(6, 3)), "2");
        assert_eq!(format_rat(&rat(-1, 2)), "-1/2");
    }

    #[test]
    fn parses_both_shapes() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("7").unwrap(), rat_int(7));
        assert_eq!(parse_rat(" 1 / 10 ").unwrap(), rat(1, 10));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x/2").is_err());
    }

    #[test]
    fn roundtrips() {
        for (n, d) in [(1, 2), (0, 1), (3, 1), (7, 12), (-5, 8)] {
            let r = rat(n, d);
            assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
        }
    }

    #[test]
    fn ceil_works() {
        assert_eq!(ceil_to_u64(&rat(7, 2)).unwrap(), 4);
        assert_eq!(ceil_to_u64(&rat(4, 2)).unwrap(), 2);
        assert!(ceil_to_u64(&rat(-1, 2)).is_err());
    }
}
