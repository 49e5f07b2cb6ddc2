//! The integer scalar abstraction shared by every exact computation in the crate.
//!
//! Everything is generic over [`Int`], a signed integer type. Use
//! [`num_bigint::BigInt`] (the [`crate::BigSlope`] family of aliases) when
//! inputs may grow without bound, or `i64`/`i128` for fast bounded searches.
//! Fixed-width types panic on overflow in debug builds; nothing wraps silently.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// A signed, exact integer type.
pub trait Int:
    Integer
    + Signed
    + Clone
    + Hash
    + Debug
    + Display
    + FromStr
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Lossless conversion from a small constant.
    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("every Int type holds an i64")
    }
}

impl<T> Int for T where
    T: Integer
        + Signed
        + Clone
        + Hash
        + Debug
        + Display
        + FromStr
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// `floor(a / b)` for `b > 0`.
pub(crate) fn floor_div<T: Int>(a: &T, b: &T) -> T {
    a.div_floor(b)
}

/// Renders an exact rational the way slopes are rendered: `p/q`, or `p` when integral.
pub fn format_ratio<T: Int>(r: &Ratio<T>) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q` or `p` into an exact rational.
pub fn parse_ratio<T: Int>(s: &str) -> Option<Ratio<T>> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<T>().ok()?, d.trim().parse::<T>().ok()?),
        None => (s.parse::<T>().ok()?, T::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(Ratio::new(num, den))
}

/// Serde helpers for integers of any [`Int`] type.
///
/// Values that fit in an `i64` become JSON numbers; anything larger is written
/// as a decimal string. Both forms are accepted on input.
pub mod serde_int {
    use super::Int;
    use serde::de::{self, Visitor};
    use serde::{Deserializer, Serializer};
    use std::fmt;
    use std::marker::PhantomData;

    pub fn serialize<T: Int, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        match v.to_i64() {
            Some(small) => s.serialize_i64(small),
            None => s.serialize_str(&v.to_string()),
        }
    }

    pub fn deserialize<'de, T: Int, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
        struct IntVisitor<T>(PhantomData<T>);

        impl<T: Int> Visitor<'_> for IntVisitor<T> {
            type Value = T;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<T, E> {
                T::from_i64(v).ok_or_else(|| E::custom("integer out of range"))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<T, E> {
                T::from_u64(v).ok_or_else(|| E::custom("integer out of range"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<T, E> {
                v.parse::<T>()
                    .map_err(|_| E::custom(format!("invalid integer {v:?}")))
            }
        }

        d.deserialize_any(IntVisitor(PhantomData))
    }
}

/// Serde helpers for exact rationals, written as `"p/q"` strings.
pub mod serde_ratio {
    use super::{format_ratio, parse_ratio, Int};
    use num_rational::Ratio;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Int, S: Serializer>(v: &Ratio<T>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_ratio(v))
    }

    pub fn deserialize<'de, T: Int, D: Deserializer<'de>>(d: D) -> Result<Ratio<T>, D::Error> {
        let raw = String::deserialize(d)?;
        parse_ratio(&raw).ok_or_else(|| de::Error::custom(format!("invalid rational {raw:?}")))
    }
}
