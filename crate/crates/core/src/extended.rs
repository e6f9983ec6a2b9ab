//! Nonnegative reals extended by `+∞`.

use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

/// A real number or `+∞`.
///
/// Used where a quantity is an empty minimum (the inter-block distance of a
/// one-block partition) or an infimum over an empty family (`d_m` for `m > n`).
/// Serialized as a JSON number, or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extended {
    Finite(f64),
    Infinity,
}

impl Extended {
    pub fn is_finite(self) -> bool {
        matches!(self, Extended::Finite(_))
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinity => None,
        }
    }

    /// The finite value; panics on `+∞`.
    pub fn unwrap(self) -> f64 {
        self.finite().expect("called `Extended::unwrap` on infinity")
    }
}

impl From<f64> for Extended {
    fn from(v: f64) -> Self {
        Extended::Finite(v)
    }
}

impl PartialOrd for Extended {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => a.partial_cmp(b),
            (Extended::Finite(_), Extended::Infinity) => Some(Ordering::Less),
            (Extended::Infinity, Extended::Finite(_)) => Some(Ordering::Greater),
            (Extended::Infinity, Extended::Infinity) => Some(Ordering::Equal),
        }
    }
}

impl PartialEq<f64> for Extended {
    fn eq(&self, other: &f64) -> bool {
        *self == Extended::Finite(*other)
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(v) => s.serialize_f64(*v),
            Extended::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Extended {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct ExtVisitor;

        impl Visitor<'_> for ExtVisitor {
            type Value = Extended;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number or \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Extended, E> {
                Ok(Extended::Finite(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Extended, E> {
                Ok(Extended::Finite(v as f64))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Extended, E> {
                Ok(Extended::Finite(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Extended, E> {
                if v == "inf" {
                    Ok(Extended::Infinity)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }

        d.deserialize_any(ExtVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_puts_infinity_last() {
        assert!(Extended::Finite(1e300) < Extended::Infinity);
        assert!(Extended::Finite(1.0) < Extended::Finite(2.0));
        assert_eq!(Extended::Infinity, Extended::Infinity);
    }

    #[test]
    fn json_forms() {
        assert_eq!(serde_json::to_string(&Extended::Infinity).unwrap(), "\"inf\"");
        assert_eq!(serde_json::to_string(&Extended::Finite(3.5)).unwrap(), "3.5");
        let back: Extended = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(back, Extended::Infinity);
        let back: Extended = serde_json::from_str("2").unwrap();
        assert_eq!(back, 2.0);
    }
}
