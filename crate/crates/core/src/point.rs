use std::fmt;

use num_rational::BigRational;
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::scalar::{parse_rational, rat};
use crate::ExactScalar;

/// A point of the rational plane.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlanePoint {
    pub x: ExactScalar,
    pub y: ExactScalar,
}

impl PlanePoint {
    pub fn new(x: ExactScalar, y: ExactScalar) -> Self {
        PlanePoint { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        PlanePoint { x: rat(x), y: rat(y) }
    }
}

impl fmt::Display for PlanePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Builds a list of integer points.
pub fn points(coords: &[(i64, i64)]) -> Vec<PlanePoint> {
    coords.iter().map(|&(x, y)| PlanePoint::int(x, y)).collect()
}

pub(crate) fn rational_to_string(q: &BigRational) -> String {
    q.to_string()
}

impl Serialize for PlanePoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&rational_to_string(&self.x))?;
        t.serialize_element(&rational_to_string(&self.y))?;
        t.end()
    }
}

struct RationalText(BigRational);

impl<'de> Deserialize<'de> for RationalText {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = RationalText;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational written as \"p\" or \"p/q\"")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<RationalText, E> {
                parse_rational(v).map(RationalText).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<RationalText, E> {
                Ok(RationalText(rat(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<RationalText, E> {
                i64::try_from(v).map(|v| RationalText(rat(v))).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

impl<'de> Deserialize<'de> for PlanePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = PlanePoint;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a pair of rationals")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<PlanePoint, A::Error> {
                let x: RationalText = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let y: RationalText = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                Ok(PlanePoint { x: x.0, y: y.0 })
            }
        }
        d.deserialize_seq(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    #[test]
    fn json_round_trip() {
        let p = PlanePoint::new(frac(1, 2), rat(-3));
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["1/2","-3"]"#);
        let q: PlanePoint = serde_json::from_str(&s).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert!(serde_json::from_str::<PlanePoint>(r#"["3/0","1"]"#).is_err());
        assert!(serde_json::from_str::<PlanePoint>(r#"["1"]"#).is_err());
    }
}
