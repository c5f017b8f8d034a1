//! Serde helpers: big integers as exact JSON numbers, rationals as "p/q".

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Serialize, Serializer};

pub(crate) fn bigint<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    serde_json::Number::from_str(&value.to_string())
        .map_err(serde::ser::Error::custom)?
        .serialize(s)
}

pub(crate) fn opt_bigint<S: Serializer>(value: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => bigint(v, s),
        None => s.serialize_none(),
    }
}

pub(crate) fn rational<S: Serializer>(value: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(value))
}

pub(crate) fn opt_rational<S: Serializer>(
    value: &Option<BigRational>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => rational(v, s),
        None => s.serialize_none(),
    }
}

/// `p` for integers, `p/q` in lowest terms otherwise.
pub fn format_rational(value: &BigRational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}
