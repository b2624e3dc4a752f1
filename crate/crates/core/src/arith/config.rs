use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::valexp::{checked_pow, ValExp};
use crate::error::{Error, Result};

/// Upper bound on `prec * p^dencap`, the number of exponent slots an element
/// may occupy.
const MAX_TICKS: u64 = 1 << 40;

/// Finite-precision model of `K = Q_p(p^{1/p^inf})^` and its tilt.
///
/// Exponents are stored internally as integer *ticks*: multiples of
/// `1/p^dencap`. Every element is known modulo `p^prec` (resp. `t^prec`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldConfig {
    p: u32,
    prec: u32,
    dencap: u32,
}

impl FieldConfig {
    pub fn new(p: u32, prec: u32, dencap: u32) -> Result<Self> {
        if p < 2 || !is_prime(p) {
            return Err(Error::InvalidConfig(format!("p = {p} is not prime")));
        }
        if prec == 0 {
            return Err(Error::InvalidConfig("prec must be at least 1".into()));
        }
        let scale = checked_pow(p, dencap)
            .ok_or_else(|| Error::InvalidConfig(format!("p^{dencap} overflows")))?;
        match scale.checked_mul(prec as u64) {
            Some(t) if t <= MAX_TICKS => {}
            _ => {
                return Err(Error::InvalidConfig(format!(
                    "prec * p^dencap = {prec} * {p}^{dencap} is too large"
                )))
            }
        }
        Ok(FieldConfig { p, prec, dencap })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn dencap(&self) -> u32 {
        self.dencap
    }

    /// `p^dencap`: the number of ticks in one unit of valuation.
    pub fn scale(&self) -> u64 {
        (self.p as u64).pow(self.dencap)
    }

    /// The precision cap `N` expressed in ticks.
    pub fn cap_ticks(&self) -> u64 {
        self.prec as u64 * self.scale()
    }

    pub fn with_prec(&self, prec: u32) -> Result<Self> {
        FieldConfig::new(self.p, prec, self.dencap)
    }

    pub fn with_dencap(&self, dencap: u32) -> Result<Self> {
        FieldConfig::new(self.p, self.prec, dencap)
    }

    pub fn ticks(&self, e: ValExp) -> Result<u64> {
        self.ratio_ticks(e.ratio())
    }

    pub fn ratio_ticks(&self, r: Ratio<i64>) -> Result<u64> {
        let scaled = r * Ratio::from_integer(self.scale() as i64);
        if !scaled.is_integer() || *scaled.numer() < 0 {
            return Err(Error::dencap(self.dencap, format!("exponent {r}")));
        }
        Ok(*scaled.numer() as u64)
    }

    /// Largest tick count not exceeding `r` (used when a precision bound
    /// falls between lattice points).
    pub fn floor_ticks(&self, r: Ratio<i64>) -> u64 {
        let scaled = r * Ratio::from_integer(self.scale() as i64);
        let f = scaled.floor();
        if *f.numer() < 0 {
            0
        } else {
            *f.numer() as u64
        }
    }

    pub fn valexp(&self, ticks: u64) -> ValExp {
        ValExp::from_ratio(self.ratio(ticks)).expect("ticks are nonnegative")
    }

    pub fn ratio(&self, ticks: u64) -> Ratio<i64> {
        Ratio::new(ticks as i64, self.scale() as i64)
    }

    pub fn check_same(&self, other: &FieldConfig) -> Result<()> {
        if self != other {
            return Err(Error::ConfigMismatch(format!("{self} vs {other}")));
        }
        Ok(())
    }
}

impl fmt::Display for FieldConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, prec={}, dencap={})", self.p, self.prec, self.dencap)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_configs() {
        assert!(FieldConfig::new(4, 8, 2).is_err());
        assert!(FieldConfig::new(3, 0, 2).is_err());
        assert!(FieldConfig::new(5, 8, 30).is_err());
    }

    #[test]
    fn tick_conversion() {
        let cfg = FieldConfig::new(3, 8, 2).unwrap();
        assert_eq!(cfg.scale(), 9);
        assert_eq!(cfg.ticks(ValExp::new(1, 1, 3).unwrap()).unwrap(), 3);
        assert!(cfg.ticks(ValExp::new(1, 3, 3).unwrap()).is_err());
        assert_eq!(cfg.floor_ticks(Ratio::new(1, 27)), 0);
        assert_eq!(cfg.valexp(12), ValExp::new(4, 1, 3).unwrap());
    }
}
