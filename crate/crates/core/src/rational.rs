//! The scalar type and its text forms.
//!
//! Everything is a [`BigRational`]; the helpers here fix the two renderings
//! used on the wire: `"num/den"` (always with a denominator) and the compact
//! form that drops `/1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_bigint(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// `"num/den"`, denominator always present and positive.
pub fn to_fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Integer rendering when the denominator is 1, `"num/den"` otherwise.
pub fn to_compact_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        to_fraction_string(r)
    }
}

/// Parses `"n"` or `"n/d"` with `d != 0`; the result is reduced.
pub fn parse(s: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(s.to_owned());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

pub fn is_nonnegative_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_negative()
}

/// Serde adapter writing a [`Rational`] as a `"num/den"` string.
pub mod serde_fraction {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_fraction_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing a [`Rational`] in compact form (integers without `/1`).
pub mod serde_compact {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_compact_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_both_forms() {
        assert_eq!(to_fraction_string(&int(32)), "32/1");
        assert_eq!(to_fraction_string(&frac(-2, 96)), "-1/48");
        assert_eq!(to_compact_string(&int(-7)), "-7");
        assert_eq!(to_compact_string(&frac(5, 12)), "5/12");
    }

    #[test]
    fn parse_normalizes_sign_and_terms() {
        assert_eq!(parse("2/4").unwrap(), frac(1, 2));
        assert_eq!(parse("3/-6").unwrap(), frac(-1, 2));
        assert_eq!(parse("17").unwrap(), int(17));
        assert!(parse("1/0").is_err());
        assert!(parse("x/2").is_err());
        assert!(parse("").is_err());
    }
}
