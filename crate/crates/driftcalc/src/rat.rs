//! Exact rational arithmetic helpers.
//!
//! All quantities in the bound computations (times, rates, bits) are
//! arbitrary-precision rationals. The canonical text encoding is `"p/q"`
//! (or `"p"` for integers); decimal literals such as `"1.0002"` are also
//! accepted on input and converted exactly.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::str::FromStr;

use crate::{Error, Result};

pub type Rat = num_rational::BigRational;

/// Rational from an integer pair.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Rational from an integer.
pub fn rat_i(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Exact `p / 10^k`, convenient for SI-scaled constants such as `4e-9`.
pub fn rat_pow10(p: i64, k: u32) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(10u8).pow(k))
}

/// Parses `"p/q"`, `"p"` or an exact decimal such as `"-3.25"`.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let p = BigInt::from_str(num.trim())
            .map_err(|_| Error::InvalidParameter(format!("bad rational numerator {num:?}")))?;
        let q = BigInt::from_str(den.trim())
            .map_err(|_| Error::InvalidParameter(format!("bad rational denominator {den:?}")))?;
        if q.is_zero() {
            return Err(Error::InvalidParameter(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.trim_start().starts_with('-');
        let int = BigInt::from_str(int.trim())
            .map_err(|_| Error::InvalidParameter(format!("bad decimal {s:?}")))?;
        let digits = frac.trim();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::InvalidParameter(format!("bad decimal {s:?}")));
        }
        let scale = BigInt::from(10u8).pow(digits.len() as u32);
        let frac = BigInt::from_str(digits).expect("digits checked above");
        let frac = if neg { -frac } else { frac };
        return Ok(Rat::new(int * &scale + frac, scale));
    }
    let p = BigInt::from_str(s)
        .map_err(|_| Error::InvalidParameter(format!("bad rational literal {s:?}")))?;
    Ok(Rat::from_integer(p))
}

/// Canonical `"p/q"` encoding (always includes the denominator).
pub fn format_rat(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Nearest f64, for export layers only.
pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Denormal-range or huge components; divide after a rough rescale.
        let shift = (r.numer().bits() as i64 - r.denom().bits() as i64).clamp(-900, 900);
        let scaled = if shift > 0 {
            Rat::new(r.numer().clone(), r.denom().clone() << shift as u64)
        } else {
            Rat::new(r.numer().clone() << (-shift) as u64, r.denom().clone())
        };
        scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
    })
}

/// Rounds to `sig` significant decimal digits, ties to even, exactly.
pub fn round_significant(r: &Rat, sig: u32) -> Rat {
    if r.is_zero() || sig == 0 {
        return Rat::zero();
    }
    // Magnitude: the unique e with 10^e <= |r| < 10^(e+1).
    let ten = rat_i(10);
    let mut e: i64 = 0;
    let mut m = r.abs();
    while m >= ten {
        m /= &ten;
        e += 1;
    }
    let one = rat_i(1);
    while m < one {
        m *= &ten;
        e -= 1;
    }
    let shift = sig as i64 - 1 - e;
    let scale = if shift >= 0 {
        Rat::from_integer(BigInt::from(10u8).pow(shift as u32))
    } else {
        Rat::new(BigInt::from(1), BigInt::from(10u8).pow((-shift) as u32))
    };
    let scaled = r * &scale;
    // Round half to even.
    let floor = scaled.floor();
    let frac = &scaled - &floor;
    let half = rat(1, 2);
    let rounded = if frac > half {
        floor + one
    } else if frac < half {
        floor
    } else if (floor.numer() % BigInt::from(2)).is_zero() {
        floor
    } else {
        floor + one
    };
    rounded / scale
}

/// Serde adapter: `Rat` as a `"p/q"` string.
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

/// Serde adapter: `Option<Rat>` as an optional `"p/q"` string.
pub mod rat_serde_opt {
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
        let s = Option::<String>::deserialize(de)?;
        s.map(|s| parse_rat(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rat("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rat("5").unwrap(), rat_i(5));
        assert_eq!(parse_rat("1.0002").unwrap(), rat(10002, 10000));
        assert_eq!(parse_rat("-0.25").unwrap(), rat(-1, 4));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
    }

    #[test]
    fn roundtrip() {
        let r = rat(-7, 12);
        assert_eq!(parse_rat(&format_rat(&r)).unwrap(), r);
    }

    #[test]
    fn significant_rounding() {
        assert_eq!(round_significant(&rat(10042, 10000), 3), rat(1, 1));
        assert_eq!(round_significant(&rat(42, 10000), 2), rat(42, 10000));
        assert_eq!(round_significant(&rat(20002, 100_000_000), 1), rat_pow10(2, 4));
        // Ties to even.
        assert_eq!(round_significant(&rat(25, 1000), 1), rat(2, 100));
        assert_eq!(round_significant(&rat(35, 1000), 1), rat(4, 100));
    }

    #[test]
    fn pow10() {
        assert_eq!(rat_pow10(4, 9), rat(4, 1_000_000_000));
    }
}
