use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};

/// Which side of the radius an infinitesimal `gamma` sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "<")]
    Less,
    #[serde(rename = ">")]
    Greater,
}

impl Sign {
    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Less => "<",
            Sign::Greater => ">",
        }
    }

    pub fn parse(s: &str) -> Result<Sign> {
        match s {
            "<" => Ok(Sign::Less),
            ">" => Ok(Sign::Greater),
            _ => Err(Error::Parse(format!("sign must be \"<\" or \">\", got {s:?}"))),
        }
    }
}

/// `p^{-q} * (gamma/r)^k` in `R_{>0} x gamma^Z`, where `gamma/r` is
/// infinitesimally below 1 for [`Sign::Less`] and above 1 for
/// [`Sign::Greater`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rank2Value {
    pub q: Ratio<i64>,
    pub k: i64,
    pub sign: Sign,
}

/// Absolute value at a point, written additively: smaller exponents are
/// larger absolute values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AdicValue {
    Rank1(Ratio<i64>),
    Rank2(Rank2Value),
}

impl AdicValue {
    fn parts(self, sign: Option<Sign>) -> (Ratio<i64>, i64, Option<Sign>) {
        match self {
            AdicValue::Rank1(q) => (q, 0, sign),
            AdicValue::Rank2(v) => (v.q, v.k, Some(v.sign)),
        }
    }

    fn sign(self) -> Option<Sign> {
        match self {
            AdicValue::Rank1(_) => None,
            AdicValue::Rank2(v) => Some(v.sign),
        }
    }

    /// Value of a product.
    pub fn mul(self, other: AdicValue) -> Result<AdicValue> {
        let sign = self.sign().or(other.sign());
        let (q1, k1, s1) = self.parts(sign);
        let (q2, k2, s2) = other.parts(sign);
        if s1 != s2 {
            return Err(Error::InvalidArgument("values from different points".into()));
        }
        Ok(match sign {
            None => AdicValue::Rank1(q1 + q2),
            Some(sign) => AdicValue::Rank2(Rank2Value { q: q1 + q2, k: k1 + k2, sign }),
        })
    }

    /// Compares absolute values: `Greater` means `|self| > |other|`.
    pub fn cmp_abs(self, other: AdicValue) -> Ordering {
        let sign = self.sign().or(other.sign());
        let (q1, k1, _) = self.parts(sign);
        let (q2, k2, _) = other.parts(sign);
        q2.cmp(&q1).then_with(|| match sign {
            Some(Sign::Greater) => k1.cmp(&k2),
            _ => k2.cmp(&k1),
        })
    }

    pub fn exponent(self) -> Ratio<i64> {
        match self {
            AdicValue::Rank1(q) => q,
            AdicValue::Rank2(v) => v.q,
        }
    }

    pub fn to_json_value(self) -> serde_json::Value {
        match self {
            AdicValue::Rank1(q) => json!({ "exponent": q.to_string() }),
            AdicValue::Rank2(v) => json!({ "exponent": v.q.to_string(), "gamma": v.k, "sign": v.sign.as_str() }),
        }
    }
}

impl fmt::Display for AdicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdicValue::Rank1(q) => write!(f, "p^(-{q})"),
            AdicValue::Rank2(v) => write!(f, "p^(-{}) gamma^{} ({})", v.q, v.k, v.sign.as_str()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_of_rank_two_values() {
        let r = |q: i64, k: i64, sign| AdicValue::Rank2(Rank2Value { q: Ratio::from_integer(q), k, sign });
        // gamma < 1 below the unit circle
        assert_eq!(r(0, 1, Sign::Less).cmp_abs(r(0, 0, Sign::Less)), Ordering::Less);
        assert_eq!(r(0, 1, Sign::Greater).cmp_abs(r(0, 0, Sign::Greater)), Ordering::Greater);
        // any real gap dominates
        assert_eq!(r(0, 100, Sign::Less).cmp_abs(r(1, 0, Sign::Less)), Ordering::Greater);
        let one = AdicValue::Rank1(Ratio::from_integer(0));
        assert_eq!(one.cmp_abs(r(0, 1, Sign::Less)), Ordering::Greater);
        assert_eq!(r(0, 1, Sign::Less).mul(r(1, 2, Sign::Less)).unwrap(), r(1, 3, Sign::Less));
    }
}
