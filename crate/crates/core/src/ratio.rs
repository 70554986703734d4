//! Exact rationals and their JSON form `{"num": .., "den": ..}`.

use num_rational::Rational64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
struct Wire {
    num: i64,
    den: i64,
}

/// Serde adapter for `Rational64`, always written in lowest terms with a
/// positive denominator.
pub mod json {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
        Wire {
            num: *r.numer(),
            den: *r.denom(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational64, D::Error> {
        let w = Wire::deserialize(d)?;
        if w.den == 0 {
            return Err(D::Error::custom("rational with zero denominator"));
        }
        Ok(Rational64::new(w.num, w.den))
    }
}

/// Wrapper used where a bare rational is the whole JSON value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonRational(#[serde(with = "json")] pub Rational64);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_lowest_terms() {
        let r = JsonRational(Rational64::new(4, -6));
        assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"num":-2,"den":3}"#);
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(serde_json::from_str::<JsonRational>(r#"{"num":1,"den":0}"#).is_err());
    }
}
