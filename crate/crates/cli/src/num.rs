//! Exact numbers in JSON: integers as numbers when they fit in 64 bits and
//! as decimal strings otherwise, rationals as `"p/q"` strings.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use quasitoric_core::algebra::Rational;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision integer with a lossless JSON form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Int(pub BigInt);

impl From<BigInt> for Int {
    fn from(x: BigInt) -> Self {
        Int(x)
    }
}

impl From<i64> for Int {
    fn from(x: i64) -> Self {
        Int(BigInt::from(x))
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(x) => s.serialize_i64(x),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct IntVisitor;

        impl Visitor<'_> for IntVisitor {
            type Value = Int;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Int, E> {
                Ok(Int(v.into()))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Int, E> {
                parse_int(v)
                    .map(Int)
                    .ok_or_else(|| E::custom(format!("bad integer {v:?}")))
            }
        }

        d.deserialize_any(IntVisitor)
    }
}

pub fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

pub fn parse_int(s: &str) -> Option<BigInt> {
    BigInt::from_str(s.trim()).ok()
}

/// `"p/q"`, `"p"`; the denominator must be nonzero.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            (q != BigInt::from(0)).then(|| Rational::new(p, q))
        }
        None => parse_int(s).map(Rational::from_integer),
    }
}

/// Always `"p/q"`, also for integers (`"3/1"`).
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Comma-separated integers, e.g. `"1,2,-3"`.
pub fn parse_int_list(s: &str) -> Option<Vec<BigInt>> {
    s.split(',').map(parse_int).collect()
}

pub fn parse_rational_list(s: &str) -> Option<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        let q = parse_rational("-2/4").unwrap();
        assert_eq!(format_rational(&q), "-1/2");
        assert_eq!(
            parse_rational(" 7 ").unwrap(),
            Rational::from_integer(7.into())
        );
        assert_eq!(format_rational(&parse_rational("3").unwrap()), "3/1");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("a/2").is_none());
    }

    #[test]
    fn big_ints_use_strings() {
        let big = Int(BigInt::from(i64::MAX) * 10);
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(s, "\"92233720368547758070\"");
        assert_eq!(serde_json::from_str::<Int>(&s).unwrap(), big);
        assert_eq!(serde_json::to_string(&Int::from(-3)).unwrap(), "-3");
        assert_eq!(serde_json::from_str::<Int>("-3").unwrap(), Int::from(-3));
    }

    #[test]
    fn lists() {
        assert_eq!(
            parse_int_list("1, 2,-3").unwrap(),
            vec![1.into(), 2.into(), BigInt::from(-3)]
        );
        assert!(parse_int_list("1,,2").is_none());
        assert_eq!(parse_rational_list("1/2,2").unwrap().len(), 2);
    }
}
