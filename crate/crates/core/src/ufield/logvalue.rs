//! Log-scale surrogates for absolute values.
//!
//! With `|x| = a^{-v}` a value is stored as the rational `v`; larger values
//! mean smaller absolute values and `+inf` stands for zero.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Exact rational numbers used for slopes, shifts and levels.
pub type Q = Rational64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LogValue {
    Finite(Q),
    Infinity,
}

impl LogValue {
    pub fn from_int(v: i64) -> Self {
        LogValue::Finite(Q::from_integer(v))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, LogValue::Infinity)
    }

    pub fn finite(&self) -> Option<Q> {
        match self {
            LogValue::Finite(q) => Some(*q),
            LogValue::Infinity => None,
        }
    }
}

impl From<Q> for LogValue {
    fn from(q: Q) -> Self {
        LogValue::Finite(q)
    }
}

impl From<i64> for LogValue {
    fn from(v: i64) -> Self {
        LogValue::from_int(v)
    }
}

impl PartialOrd for LogValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LogValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LogValue::Infinity, LogValue::Infinity) => Ordering::Equal,
            (LogValue::Infinity, _) => Ordering::Greater,
            (_, LogValue::Infinity) => Ordering::Less,
            (LogValue::Finite(a), LogValue::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for LogValue {
    type Output = LogValue;
    fn add(self, rhs: LogValue) -> LogValue {
        match (self, rhs) {
            (LogValue::Finite(a), LogValue::Finite(b)) => LogValue::Finite(a + b),
            _ => LogValue::Infinity,
        }
    }
}

impl Add<Q> for LogValue {
    type Output = LogValue;
    fn add(self, rhs: Q) -> LogValue {
        self + LogValue::Finite(rhs)
    }
}

impl Sub<Q> for LogValue {
    type Output = LogValue;
    fn sub(self, rhs: Q) -> LogValue {
        self + LogValue::Finite(-rhs)
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogValue::Finite(q) => f.write_str(&fmt_rational(q)),
            LogValue::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for LogValue {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        if s.trim() == "inf" {
            Ok(LogValue::Infinity)
        } else {
            parse_rational(s).map(LogValue::Finite)
        }
    }
}

impl Serialize for LogValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LogValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `"num/den"`, or `"num"` for integers.
pub fn fmt_rational(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Q, Error> {
    let bad = |msg: &str| Error::Parse {
        pos: 0,
        msg: format!("{msg}: {s:?}"),
    };
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad("bad numerator"))?;
            let d: i64 = d.trim().parse().map_err(|_| bad("bad denominator"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(Q::new(n, d))
        }
        None => s
            .parse::<i64>()
            .map(Q::from_integer)
            .map_err(|_| bad("bad rational")),
    }
}

/// Smallest integer `>= q`.
pub fn ceil_q(q: &Q) -> i64 {
    q.ceil().to_integer()
}

/// Smallest integer `<= q`.
pub fn floor_q(q: &Q) -> i64 {
    q.floor().to_integer()
}

/// Least common multiple of the denominators.
pub fn lcm_denominators<'a>(qs: impl IntoIterator<Item = &'a Q>) -> i64 {
    qs.into_iter().fold(1i64, |acc, q| acc.lcm(q.denom()))
}

pub fn is_positive(q: &Q) -> bool {
    q.is_positive()
}

pub mod serde_rational {
    //! Serialize rationals as `"num/den"` strings.
    use super::*;

    pub fn serialize<S: Serializer>(q: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(qs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(qs.len()))?;
        for q in qs {
            seq.serialize_element(&fmt_rational(q))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_puts_infinity_last() {
        let half = LogValue::Finite(Q::new(1, 2));
        assert!(half < LogValue::from_int(1));
        assert!(LogValue::from_int(100) < LogValue::Infinity);
        assert_eq!(half + LogValue::Infinity, LogValue::Infinity);
    }

    #[test]
    fn rational_strings() {
        assert_eq!(fmt_rational(&Q::new(2, 4)), "1/2");
        assert_eq!(fmt_rational(&Q::from_integer(-3)), "-3");
        assert_eq!(parse_rational(" 3/6 ").unwrap(), Q::new(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert_eq!("inf".parse::<LogValue>().unwrap(), LogValue::Infinity);
        assert_eq!(ceil_q(&Q::new(-1, 2)), 0);
        assert_eq!(floor_q(&Q::new(-1, 2)), -1);
        assert_eq!(lcm_denominators(&[Q::new(1, 2), Q::new(2, 3), Q::from_integer(4)]), 6);
    }
}
