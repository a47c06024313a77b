//! Exact rationals and the `"p/q"` text form used in every file format.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_q(s: &str) -> Result<Q> {
    let bad = || Error::InvalidRational(s.to_string());
    let t = s.trim();
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

/// Gcd of positive rationals: gcd of numerators over lcm of denominators.
pub fn gcd_q<'a>(xs: impl IntoIterator<Item = &'a Q>) -> Option<Q> {
    let mut acc: Option<(BigInt, BigInt)> = None;
    for x in xs {
        let (n, d) = (x.numer().abs(), x.denom().clone());
        acc = Some(match acc {
            None => (n, d),
            Some((an, ad)) => (an.gcd(&n), ad.lcm(&d)),
        });
    }
    acc.map(|(n, d)| Q::new(n, d))
}

/// Exact integer value of `x` if it is one.
pub fn to_int(x: &Q) -> Option<i64> {
    if x.denom().is_one() {
        i64::try_from(x.numer()).ok()
    } else {
        None
    }
}

pub fn floor_i64(x: &Q) -> i64 {
    i64::try_from(x.floor().numer()).expect("value out of range")
}

pub(crate) mod serde_q {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Int(i64),
        Text(String),
    }

    pub fn parse(v: &serde_json::Value) -> Result<Q> {
        match v {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(q)
                .ok_or_else(|| Error::InvalidRational(n.to_string())),
            serde_json::Value::String(s) => parse_q(s),
            other => Err(Error::InvalidRational(other.to_string())),
        }
    }

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Int(n) => Ok(q(n)),
            Repr::Text(s) => parse_q(&s).map_err(de::Error::custom),
        }
    }
}
