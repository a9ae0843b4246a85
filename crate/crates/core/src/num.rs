//! Integer aliases and the decimal-string serde codecs shared by every
//! serializable type in the crate.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer as _;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision non-negative integer.
pub type Natural = BigUint;
/// Arbitrary-precision signed integer.
pub type Integer = BigInt;

pub fn nat(v: u64) -> Natural {
    Natural::from(v)
}

pub fn int(v: i64) -> Integer {
    Integer::from(v)
}

/// gcd of a list of naturals; the empty gcd is 0.
pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a Natural>) -> Natural {
    values
        .into_iter()
        .fold(Natural::zero(), |acc, v| acc.gcd(v))
}

/// `a | b` with the convention that `0 | b` only for `b = 0`.
pub fn divides(a: &Natural, b: &Natural) -> bool {
    if a.is_zero() {
        b.is_zero()
    } else {
        (b % a).is_zero()
    }
}

pub fn parse_natural(s: &str) -> Result<Natural> {
    let t = s.trim();
    if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse {
            input: s.to_string(),
            reason: "expected a non-negative base-10 integer".into(),
        });
    }
    t.parse().map_err(|_| Error::Parse {
        input: s.to_string(),
        reason: "expected a non-negative base-10 integer".into(),
    })
}

pub fn parse_integer(s: &str) -> Result<Integer> {
    let t = s.trim();
    let digits = t.strip_prefix('-').unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse {
            input: s.to_string(),
            reason: "expected a base-10 integer".into(),
        });
    }
    t.parse().map_err(|_| Error::Parse {
        input: s.to_string(),
        reason: "expected a base-10 integer".into(),
    })
}

/// Comma-separated naturals, no whitespace required.
pub fn parse_natural_list(s: &str) -> Result<Vec<Natural>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_natural).collect()
}

pub(crate) fn to_usize(v: &Natural, limit: usize) -> Result<usize> {
    match v.to_usize() {
        Some(u) if u <= limit => Ok(u),
        _ => Err(Error::OracleLimit {
            needed: v.to_string(),
            limit,
        }),
    }
}

/// Serde codec: a [`Natural`] as a decimal string. Numbers are accepted on
/// input as well.
pub mod dec {
    use super::Natural;
    use serde::de::{self, Visitor};
    use serde::{Deserializer, Serializer};
    use std::fmt;

    pub fn serialize<S: Serializer>(v: &Natural, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Natural, D::Error> {
        d.deserialize_any(NaturalVisitor)
    }

    pub(crate) struct NaturalVisitor;

    impl<'de> Visitor<'de> for NaturalVisitor {
        type Value = Natural;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a non-negative integer or decimal string")
        }

        fn visit_u64<E: de::Error>(self, v: u64) -> Result<Natural, E> {
            Ok(Natural::from(v))
        }

        fn visit_i64<E: de::Error>(self, v: i64) -> Result<Natural, E> {
            u64::try_from(v)
                .map(Natural::from)
                .map_err(|_| E::custom("negative value"))
        }

        fn visit_str<E: de::Error>(self, v: &str) -> Result<Natural, E> {
            super::parse_natural(v).map_err(E::custom)
        }
    }
}

/// Serde codec: a list of [`Natural`]s as decimal strings.
pub mod dec_vec {
    use super::Natural;
    use serde::de::{SeqAccess, Visitor};
    use serde::ser::SerializeSeq;
    use serde::{Deserializer, Serializer};
    use std::fmt;

    pub fn serialize<S: Serializer>(v: &[Natural], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Natural>, D::Error> {
        struct ListVisitor;
        impl<'de> Visitor<'de> for ListVisitor {
            type Value = Vec<Natural>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a list of non-negative integers")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut a: A) -> Result<Vec<Natural>, A::Error> {
                let mut out = Vec::new();
                while let Some(Wrapped(v)) = a.next_element()? {
                    out.push(v);
                }
                Ok(out)
            }
        }
        d.deserialize_seq(ListVisitor)
    }

    struct Wrapped(Natural);

    impl<'de> serde::Deserialize<'de> for Wrapped {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            d.deserialize_any(super::dec::NaturalVisitor).map(Wrapped)
        }
    }
}

/// Serde codec: an [`Integer`](super::Integer) as a decimal string.
pub mod dec_int {
    use super::Integer;
    use serde::de::{self, Visitor};
    use serde::{Deserializer, Serializer};
    use std::fmt;

    pub fn serialize<S: Serializer>(v: &Integer, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Integer, D::Error> {
        struct IntVisitor;
        impl<'de> Visitor<'de> for IntVisitor {
            type Value = Integer;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or decimal string")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Integer, E> {
                Ok(Integer::from(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Integer, E> {
                Ok(Integer::from(v))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Integer, E> {
                super::parse_integer(v).map_err(E::custom)
            }
        }
        d.deserialize_any(IntVisitor)
    }
}
