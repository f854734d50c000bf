//! Exact rationals and their `"p/q"` text form.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// The scalar type used by every decision procedure in the crate.
pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal {literal:?}: {reason}")]
pub struct ParseRationalError {
    pub literal: String,
    pub reason: &'static str,
}

/// Parses `"p/q"` or `"p"`. Decimal points and exponents are rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        literal: s.to_string(),
        reason,
    };
    let t = s.trim();
    if t.is_empty() {
        return Err(err("empty"));
    }
    if t.contains(['.', 'e', 'E']) {
        return Err(err("floating-point notation is not accepted"));
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num = i128::from_str(num).map_err(|_| err("numerator is not an integer"))?;
    let den = i128::from_str(den).map_err(|_| err("denominator is not an integer"))?;
    if den == 0 {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text: `"p"` for integers, `"p/q"` with `q > 0` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rat(n: i128) -> Rational {
    Rational::from_integer(n)
}

pub fn frac(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

pub fn ceil_i64(q: &Rational) -> i64 {
    q.ceil().to_integer().to_i64().expect("ceiling out of i64 range")
}

pub fn floor_i64(q: &Rational) -> i64 {
    q.floor().to_integer().to_i64().expect("floor out of i64 range")
}

pub fn to_i64(q: &Rational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

pub fn sign(q: &Rational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Integer gcd on `i64` magnitudes; `gcd(0, 0) = 0`.
pub fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn is_one(q: &Rational) -> bool {
    q.is_one()
}

/// Serde adapter writing a [`Rational`] as its canonical string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalText(pub Rational);

impl fmt::Display for RationalText {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl Serialize for RationalText {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for RationalText {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        // Only strings are accepted; a JSON number here is a schema error.
        let s = String::deserialize(deserializer)?;
        parse_rational(&s)
            .map(RationalText)
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_integers() {
        assert_eq!(parse_rational("1/2").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        assert_eq!(parse_rational(" 3 / -9 ").unwrap(), frac(-1, 3));
    }

    #[test]
    fn rejects_floats_and_garbage() {
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("x/2").is_err());
    }

    #[test]
    fn canonical_text() {
        assert_eq!(format_rational(&frac(4, -6)), "-2/3");
        assert_eq!(format_rational(&rat(-5)), "-5");
        assert_eq!(format_rational(&rat(0)), "0");
    }

    #[test]
    fn json_forbids_numbers() {
        let ok: RationalText = serde_json::from_str("\"1/3\"").unwrap();
        assert_eq!(ok.0, frac(1, 3));
        assert!(serde_json::from_str::<RationalText>("0.5").is_err());
        assert!(serde_json::from_str::<RationalText>("\"0.5\"").is_err());
    }
}
