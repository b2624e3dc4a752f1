use std::fmt;
use std::ops::Add;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// A nonnegative element of `Z[1/p]`, the exponent lattice shared by both
/// fields. Stored as a reduced fraction, so `num / p^denpow` is automatically
/// normalized (p divides `num` only when `denpow = 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ValExp(Ratio<i64>);

impl ValExp {
    pub const ZERO: ValExp = ValExp(Ratio::new_raw(0, 1));

    pub fn new(num: u64, denpow: u32, p: u32) -> Result<Self> {
        let den = checked_pow(p, denpow)
            .ok_or_else(|| Error::InvalidArgument(format!("p^{denpow} overflows")))?;
        let num = i64::try_from(num).map_err(|_| Error::InvalidArgument("numerator too large".into()))?;
        Ok(ValExp(Ratio::new(num, den as i64)))
    }

    pub fn integer(n: u64) -> Self {
        ValExp(Ratio::from_integer(n as i64))
    }

    /// Accepts any nonnegative rational; membership in `Z[1/p]` is checked
    /// by [`ValExp::parts`].
    pub fn from_ratio(r: Ratio<i64>) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::InvalidArgument(format!("negative exponent {r}")));
        }
        Ok(ValExp(r))
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// `(num, denpow)` with `self = num / p^denpow`; fails when the
    /// denominator is not a power of `p`.
    pub fn parts(&self, p: u32) -> Result<(u64, u32)> {
        let mut den = *self.0.denom();
        let mut denpow = 0;
        while den > 1 {
            if den % p as i64 != 0 {
                return Err(Error::InvalidArgument(format!("{} is not in Z[1/{p}]", self.0)));
            }
            den /= p as i64;
            denpow += 1;
        }
        Ok((*self.0.numer() as u64, denpow))
    }

    pub fn in_lattice(r: Ratio<i64>, p: u32) -> bool {
        let mut den = *r.denom();
        while den > 1 && den % p as i64 == 0 {
            den /= p as i64;
        }
        den == 1
    }
}

impl Add for ValExp {
    type Output = ValExp;
    fn add(self, rhs: ValExp) -> ValExp {
        ValExp(self.0 + rhs.0)
    }
}

impl fmt::Display for ValExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn checked_pow(p: u32, e: u32) -> Option<u64> {
    (p as u64).checked_pow(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_on_construction() {
        let a = ValExp::new(3, 2, 3).unwrap();
        assert_eq!(a.parts(3).unwrap(), (1, 1));
        let b = ValExp::new(9, 2, 3).unwrap();
        assert_eq!(b.parts(3).unwrap(), (1, 0));
        assert!(b.is_integer());
    }

    #[test]
    fn order_and_sum_agree_with_rationals() {
        let a = ValExp::new(1, 2, 3).unwrap();
        let b = ValExp::new(1, 1, 3).unwrap();
        assert!(a < b);
        assert_eq!((a + b).parts(3).unwrap(), (4, 2));
    }

    #[test]
    fn rejects_non_p_denominators() {
        let half = ValExp::from_ratio(Ratio::new(1, 2)).unwrap();
        assert!(half.parts(3).is_err());
        assert!(half.parts(2).is_ok());
    }
}
