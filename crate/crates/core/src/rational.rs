//! Exact rationals and their `"p/q"` text form.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn frac(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Parses `"p/q"` or `"p"`. Whitespace around the parts is ignored.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::InvalidRational(text.to_string());
    let trimmed = text.trim();
    let (numer, denom) = match trimmed.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (trimmed, "1"),
    };
    let numer = BigInt::from_str(numer).map_err(|_| bad())?;
    let denom = BigInt::from_str(denom).map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(numer, denom))
}

/// Comma separated list of rationals, e.g. `8/3,4`.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(parse_rational).collect()
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

pub fn is_integer(value: &Rational) -> bool {
    value.denom().is_one()
}

pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn abs(value: &Rational) -> Rational {
    value.abs()
}

/// Serde adapter writing a [`Rational`] as its `"p/q"` string. Accepts JSON
/// integers as well as strings on input.
pub mod as_string {
    use serde::de::{self, Deserializer, Visitor};
    use serde::Serializer;

    use super::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(value: &Rational, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rational, D::Error> {
        de.deserialize_any(RationalVisitor)
    }

    pub(crate) struct RationalVisitor;

    impl<'de> Visitor<'de> for RationalVisitor {
        type Value = Rational;

        fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
            f.write_str("a rational as an integer or a \"p/q\" string")
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
            parse_rational(v).map_err(E::custom)
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
            Ok(super::int(v))
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
            Ok(Rational::from_integer(v.into()))
        }
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod vec_as_strings {
    use serde::de::{Deserializer, SeqAccess, Visitor};
    use serde::ser::{SerializeSeq, Serializer};

    use super::{format_rational, Rational};

    pub fn serialize<S: Serializer>(values: &[Rational], ser: S) -> Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&format_rational(v))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Rational>, D::Error> {
        struct SeqVisitor;
        impl<'de> Visitor<'de> for SeqVisitor {
            type Value = Vec<Rational>;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a list of rationals")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
                let mut out = Vec::new();
                while let Some(v) = seq.next_element::<Wrapped>()? {
                    out.push(v.0);
                }
                Ok(out)
            }
        }
        de.deserialize_seq(SeqVisitor)
    }

    struct Wrapped(Rational);

    impl<'de> serde::Deserialize<'de> for Wrapped {
        fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
            de.deserialize_any(super::as_string::RationalVisitor).map(Wrapped)
        }
    }
}
